"""
A randomized reference trader
=============================

Pick ``j`` uniformly from ``0..k-1`` and wait for ``m * 2**j``, where
``M/m = 2**k``. Its expected ratio stays below ``k = log2(M/m)`` even on
prices placed just under each level.
"""

from onlinesearch import MarketBounds, expected_ratio_randomized, randomized_geometric_player, run_policy
from onlinesearch import validate_sequence

bounds = MarketBounds(1, 2**10)
eps = 1e-6

# %%
# Exact expectation on the hardest ramps
# --------------------------------------

for top in (1, 3, 6, 10):
    ramp = [2**j - eps for j in range(1, top + 1)] + [1.0]
    seq = validate_sequence(ramp, bounds)
    print(f"ramp to 2^{top:<2}: expected ratio {expected_ratio_randomized(bounds, seq):.4f} (<= 10)")

# %%
# One seeded draw
# ---------------

seq = validate_sequence([3, 17, 240, 90, 5], bounds)
for seed in range(3):
    policy = randomized_geometric_player(bounds, seed)
    print(seed, policy.label, run_policy(policy, seq))
