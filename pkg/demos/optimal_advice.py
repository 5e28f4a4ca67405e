"""
What optimality costs
=====================

Knowing the day of the best price makes the trader optimal, and
``ceil(log2 n)`` bits name that day. The staircase family shows that fewer
bits cannot work: any ``n - 1`` deterministic traders miss one staircase.
"""

from onlinesearch import (
    MarketBounds,
    build_staircase,
    encode_day_fixed,
    encode_day_self_delimiting,
    make_rpp,
    make_stop_on_day,
    optimal_day_player,
    oracle_optimal_day,
    pigeonhole_check,
    run_policy,
)

# %%
# The staircases
# --------------

family = build_staircase(8, MarketBounds(1, 9))
for i, seq in enumerate(family.members, start=1):
    print(f"sigma_{i}: {seq.prices}")

# %%
# Three bits of advice solve every member

for seq in family.members:
    tape = oracle_optimal_day(seq)
    outcome = run_policy(optimal_day_player(tape, seq.n), seq)
    print(f"tape {tape.bits} -> day {outcome.day}, profit {outcome.profit}")

# %%
# Seven traders are not enough
# ----------------------------
# Whatever seven traders we pick, some staircase is solved by none.

traders = [make_stop_on_day(d) for d in (1, 2, 3, 5, 6, 7)] + [make_rpp(9)]
witness = pigeonhole_check(family, traders)
print(f"\nunsolved: sigma_{witness.index} (all unsolved: {witness.uncovered})")

# %%
# Encodings when n is not known
# -----------------------------
# A unary length prefix doubles the budget to ``2 ceil(log2 n)`` bits.

for day, n in [(5, 8), (2, 4), (700, 1024)]:
    print(
        f"day {day} of {n}: fixed {encode_day_fixed(day, n).bits!r}, "
        f"self-delimiting {encode_day_self_delimiting(day, n).bits!r}"
    )
