"""
Advice versus randomization
===========================

How many advice bits does a reservation-price trader need before it beats
every randomized trader? This script tabulates the guaranteed competitive
ratio ``(M/m) ** (1 / (2**b + 1))`` against the deterministic and randomized
reference lines for a fluctuation ratio of 100, and locates the crossover.
"""

from onlinesearch import advice_bound, crossover_bits, figure_data, randomized_bounds

# %%
# The curve at integer budgets
# ----------------------------
# With no advice we get the classic ``sqrt(M/m)``; every extra bit roughly
# doubles the exponent's denominator, so the ratio collapses towards 1.

curve = figure_data(100, b_max=6)
print(f"{'b':>3} {'advice bound':>14}")
for b, bound in curve.rows:
    print(f"{b:>3} {bound:>14.4f}")

# %%
# Reference lines
# ---------------
# The randomized algorithms sit between ``log2(M/m) / 2`` and ``log2(M/m)``.

upper, lower = randomized_bounds(100)
print(f"\ndeterministic: {curve.det_bound:.4f}")
print(f"randomized upper: {upper:.4f}  lower: {lower:.4f}")

# %%
# Where advice overtakes randomization
# ------------------------------------
# Past ``b*`` bits the advice guarantee is below even the randomized lower
# bound. At M/m = 100 that is about 1.5 bits, so two bits already suffice.

bstar = crossover_bits(100)
print(f"\nb* = {bstar:.4f}")
print(f"advice_bound(1) = {advice_bound(1, 100):.4f} > {lower:.4f}")
print(f"advice_bound(2) = {advice_bound(2, 100):.4f} < {lower:.4f}")

# %%
# The crossover moves slowly with the fluctuation ratio.

for phi in (16, 100, 1e4, 1e8):
    print(f"M/m = {phi:>10g}: b* = {crossover_bits(phi):.3f}")
