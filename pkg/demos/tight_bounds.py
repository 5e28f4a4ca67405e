"""
Upper and lower bounds meet
===========================

The oracle picks one of ``2**b`` reservation prices; the adaptive adversary
plays against all of them at once. This script shows both sides arriving at
the same number, and the adversary holding its ground against arbitrary
reservation prices too.
"""

import numpy as np

from onlinesearch import (
    MarketBounds,
    adaptive_lower_bound,
    advice_bound,
    advice_player,
    make_rpp,
    optimal_offline,
    oracle_threshold_index,
    run_policy,
    threshold_family,
)

bounds = MarketBounds(1, 100)

# %%
# The family of thresholds
# ------------------------
# With two bits the corridor [1, 100] is cut into five bands of equal ratio.

family = threshold_family(2, bounds)
print("thresholds:", np.round(family.thresholds, 4), "step:", round(family.step, 4))

# %%
# Against its own family the adversary forces exactly the closed form
# -------------------------------------------------------------------

for b in range(6):
    transcript = adaptive_lower_bound(b, 2**b + 1, bounds, threshold_family(b, bounds).policies())
    seq = transcript.sequence
    tape = oracle_threshold_index(b, bounds, seq)
    advised = optimal_offline(seq).profit / run_policy(advice_player(b, tape, bounds), seq).profit
    print(
        f"b={b}: forced {transcript.forced_ratio:.6f}  closed form {advice_bound(b, 100):.6f}"
        f"  advised player {advised:.6f}  ({transcript.case_taken})"
    )

# %%
# Any other choice of thresholds fares no better
# ----------------------------------------------

rng = np.random.Generator(np.random.PCG64(1))
worst_margin = np.inf
for _ in range(200):
    b = int(rng.integers(0, 5))
    policies = [make_rpp(t) for t in rng.uniform(1, 100, size=2**b)]
    transcript = adaptive_lower_bound(b, 2**b + 1, bounds, policies)
    worst_margin = min(worst_margin, transcript.forced_ratio / advice_bound(b, 100))
print(f"\nsmallest forced/closed-form over 200 random families: {worst_margin:.12f}")
