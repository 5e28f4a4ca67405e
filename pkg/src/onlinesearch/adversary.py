"""Lower-bound constructions against sets of deterministic policies.

An algorithm reading ``b`` advice bits behaves, on any single input, like
the best of ``2**b`` deterministic algorithms. Both constructions here take
such a set of policies as opaque callbacks and build inputs on which the
whole set does badly.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetTooSmall, DegenerateBounds, NoWitness
from .market import MarketBounds, PriceSequence, optimal_offline
from .strategies import DecisionPolicy, _thresholds_at, band_ratio, check_bits, run_policy


@dataclass(frozen=True)
class StaircaseFamily:
    """Sequences ``sigma_i = (m+d, m+2d, ..., m+i*d, m, ..., m)`` of length ``n``."""

    n: int
    bounds: MarketBounds
    delta: float
    members: tuple[PriceSequence, ...]

    def __getitem__(self, i: int) -> PriceSequence:
        """Member ``sigma_i`` for 1-based ``i``."""
        if not 1 <= i <= self.n:
            raise IndexError(f"staircase member {i} outside 1..{self.n}")
        return self.members[i - 1]


@dataclass(frozen=True)
class PigeonholeWitness:
    index: int
    sequence: PriceSequence
    uncovered: tuple[int, ...]
    covered_by: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class AdversaryTranscript:
    """Outcome of the adaptive construction.

    ``case_taken`` is ``"all_rejected_at"`` (with ``rejected_at`` set) or
    ``"all_accepted_then_M"``. ``forced_ratio`` is measured against the best
    policy in the set.
    """

    sequence: PriceSequence
    case_taken: str
    forced_ratio: float
    b: int
    rejected_at: int | None
    requests: tuple[float, ...]
    profits: tuple[float, ...]
    opt_profit: float

    @property
    def best_profit(self) -> float:
        return max(self.profits)

    def metadata(self) -> dict:
        return {
            "case": self.case_taken,
            "rejected_at": self.rejected_at,
            "forced_ratio": self.forced_ratio,
            "b": self.b,
            "m": self.sequence.bounds.m,
            "M": self.sequence.bounds.M,
            "n": self.sequence.n,
            "best_profit": self.best_profit,
            "opt_profit": self.opt_profit,
        }


def build_staircase(n: int, bounds: MarketBounds) -> StaircaseFamily:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    m, M = bounds.m, bounds.M
    if m == M:
        raise DegenerateBounds("a staircase needs m < M")
    delta = (M - m) / n
    steps = [m + k * delta for k in range(1, n + 1)]
    # the top step must be exactly M even after rounding
    steps[-1] = M
    members = tuple(
        PriceSequence(tuple(steps[:i]) + (m,) * (n - i), bounds) for i in range(1, n + 1)
    )
    return StaircaseFamily(n, bounds, delta, members)


def _is_optimal(policy: DecisionPolicy, seq: PriceSequence) -> bool:
    return run_policy(policy, seq).profit == optimal_offline(seq).profit


def pigeonhole_check(
    family: StaircaseFamily, policies: Sequence[DecisionPolicy]
) -> PigeonholeWitness:
    """Find a staircase member on which no policy in the set is optimal.

    Members share their rising prefix, so a deterministic policy stops on
    the same day ``d`` on every member ``sigma_i`` with ``i >= d`` and never
    trades before the drop on shorter ones; it can only be optimal on
    ``sigma_d``. That day is read off the tallest member and confirmed on
    ``sigma_d``; the returned witness is then re-checked against every policy.
    """
    covered: dict[int, int] = {}
    tallest = family[family.n]
    for k, policy in enumerate(policies):
        day = run_policy(policy, tallest).day
        if day not in covered and _is_optimal(policy, family[day]):
            covered[day] = k
    uncovered = tuple(i for i in range(1, family.n + 1) if i not in covered)
    if not uncovered:
        raise NoWitness(
            f"{len(policies)} policies cover all {family.n} staircase members; "
            "a witness is only guaranteed for fewer than n policies"
        )
    index = uncovered[0]
    witness = family[index]
    if any(_is_optimal(p, witness) for p in policies):
        raise AssertionError(f"staircase member {index} is solved by some policy")
    return PigeonholeWitness(index, witness, uncovered, covered)


def adaptive_lower_bound(
    b: int,
    n_budget: int,
    bounds: MarketBounds,
    policies: Sequence[DecisionPolicy],
) -> AdversaryTranscript:
    """Adaptive adversary against ``2**b`` deterministic policies.

    Requests climb through ``p_i = m * r**i`` with ``r = (M/m)**(1/(2**b+1))``.
    The first request that no still-waiting policy takes is followed by
    ``m`` until ``n_budget`` days; if every request is taken, ``M`` is
    requested next. Either way the best policy is off by a factor ``r``.
    """
    check_bits(b)
    count = 1 << b
    if len(policies) != count:
        raise ValueError(f"expected {count} policies for b={b}, got {len(policies)}")
    if n_budget <= count:
        raise BudgetTooSmall(f"need n_budget >= 2**b + 1 = {count + 1}, got {n_budget}")

    requests = [float(p) for p in _thresholds_at(b, bounds, np.arange(1, count + 1))]
    waiting = list(range(count))
    prefix: list[float] = []
    rejected_at = None
    for i, p in enumerate(requests, start=1):
        prefix.append(p)
        snapshot = tuple(prefix)
        still_waiting = [k for k in waiting if not policies[k].decide(snapshot)]
        if len(still_waiting) == len(waiting):
            rejected_at = i
            break
        waiting = still_waiting

    if rejected_at is None:
        prefix.append(bounds.M)
        case = "all_accepted_then_M"
    else:
        case = "all_rejected_at"
    prices = prefix + [bounds.m] * (n_budget - len(prefix))
    seq = PriceSequence(tuple(prices), bounds)

    # replay every policy on the final input instead of trusting the bookkeeping
    profits = tuple(run_policy(p, seq).profit for p in policies)
    opt = optimal_offline(seq).profit
    return AdversaryTranscript(
        sequence=seq,
        case_taken=case,
        forced_ratio=opt / max(profits),
        b=b,
        rejected_at=rejected_at,
        requests=tuple(prefix),
        profits=profits,
        opt_profit=opt,
    )


def lower_bound(b: int, bounds: MarketBounds) -> float:
    """Ratio every set of ``2**b`` deterministic policies can be forced to."""
    return band_ratio(b, bounds)
