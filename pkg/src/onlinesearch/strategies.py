"""Online players: reservation-price policies, advice players, randomized geometric play.

Every player is a :class:`DecisionPolicy`, a deterministic function of the
observed price prefix. Forced acceptance on the last day is applied by
:func:`run_policy` alone, so no policy has to know ``n``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import config
from .errors import BitBudgetTooLarge, DayOutOfRange, NonDyadicRatio, NonpositiveThreshold
from .market import MarketBounds, PriceSequence, TradeOutcome, optimal_offline
from .tape import AdviceTape, as_tape, decode_day

Decide = Callable[[Sequence[float]], bool]


@dataclass(frozen=True)
class DecisionPolicy:
    """A deterministic online strategy.

    ``decide(prefix)`` sees the prices of days ``1..t`` and returns True to
    trade on day ``t``. ``last_day`` is set by policies that commit to a
    specific day and lets :func:`run_policy` reject sequences too short for it.
    """

    decide: Decide
    label: str
    last_day: int | None = None


@dataclass(frozen=True, eq=False)
class ThresholdFamily:
    """The ``2**b`` reservation prices splitting ``[m, M]`` into equal-ratio bands."""

    b: int
    thresholds: np.ndarray
    bounds: MarketBounds

    @property
    def step(self) -> float:
        """Common ratio between consecutive entries of ``[m, *thresholds, M]``."""
        return band_ratio(self.b, self.bounds)

    def __len__(self) -> int:
        return len(self.thresholds)

    def policy(self, index: int) -> DecisionPolicy:
        """RPP for the 1-based ``index`` in the family."""
        return make_rpp(float(self.thresholds[index - 1]))

    def policies(self) -> list[DecisionPolicy]:
        return [make_rpp(float(t)) for t in self.thresholds]


def check_bits(b: int) -> int:
    if b < 0:
        raise ValueError(f"advice bits must be nonnegative, got {b}")
    cap = config.max_bits()
    if b > cap:
        raise BitBudgetTooLarge(f"b={b} exceeds the harness cap of {cap} bits")
    return b


def band_ratio(b: int, bounds: MarketBounds) -> float:
    """``(M/m) ** (1 / (2**b + 1))``."""
    return bounds.fluctuation ** (1.0 / ((1 << b) + 1))


def _thresholds_at(b: int, bounds: MarketBounds, indices: np.ndarray) -> np.ndarray:
    # single code path for the family, the advice player and the adversary so
    # that all three see bit-identical thresholds
    return bounds.m * np.power(band_ratio(b, bounds), indices.astype(float))


def threshold_family(b: int, bounds: MarketBounds) -> ThresholdFamily:
    check_bits(b)
    thresholds = _thresholds_at(b, bounds, np.arange(1, (1 << b) + 1))
    thresholds.setflags(write=False)
    return ThresholdFamily(b, thresholds, bounds)


def make_rpp(p: float) -> DecisionPolicy:
    """Reservation-price policy: trade on the first price at least ``p``."""
    p = float(p)
    if not p > 0:
        raise NonpositiveThreshold(f"reservation price must be positive, got {p!r}")
    return DecisionPolicy(lambda prefix: prefix[-1] >= p, f"RPP({p:.12g})")


def make_stop_on_day(day: int) -> DecisionPolicy:
    """Stopping rule that trades on a fixed day regardless of prices."""
    if day < 1:
        raise DayOutOfRange(f"days are 1-based, got {day}")
    return DecisionPolicy(lambda prefix: len(prefix) == day, f"stop@{day}", last_day=day)


def read_index(b: int, tape: AdviceTape | str) -> int:
    """Read ``b`` bits and return the 1-based family index they name."""
    bits = as_tape(tape).read(b)
    return (int(bits, 2) if bits else 0) + 1


def advice_player(b: int, tape: AdviceTape | str, bounds: MarketBounds) -> DecisionPolicy:
    """Read ``b`` bits and play the reservation price they select."""
    check_bits(b)
    i = read_index(b, tape)
    threshold = float(_thresholds_at(b, bounds, np.array([i]))[0])
    policy = make_rpp(threshold)
    return DecisionPolicy(policy.decide, f"advice[b={b},i={i}]:{policy.label}")


def optimal_day_player(tape: AdviceTape | str, n_known: int | None = None) -> DecisionPolicy:
    day = decode_day(tape, n_known)
    if n_known is not None and day > n_known:
        raise DayOutOfRange(f"decoded day {day} exceeds n={n_known}")
    policy = make_stop_on_day(day)
    return DecisionPolicy(policy.decide, f"opt-day[{day}]", last_day=day)


class Prefix(Sequence):
    """Read-only view of the first ``t`` prices, cheaper than slicing per day."""

    __slots__ = ("_prices", "_t")

    def __init__(self, prices: tuple[float, ...], t: int):
        self._prices = prices
        self._t = t

    def __len__(self) -> int:
        return self._t

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return self._prices[: self._t][idx]
        if idx < 0:
            idx += self._t
        if not 0 <= idx < self._t:
            raise IndexError("prefix index out of range")
        return self._prices[idx]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Sequence):
            return tuple(self) == tuple(other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"Prefix({self._prices[: self._t]!r})"


def run_policy(policy: DecisionPolicy, seq: PriceSequence) -> TradeOutcome:
    """Feed prices day by day; the first ``trade`` wins, else day ``n`` is forced."""
    prices = seq.prices
    n = len(prices)
    if policy.last_day is not None and policy.last_day > n:
        raise DayOutOfRange(f"{policy.label} wants day {policy.last_day}, sequence has {n}")
    decide = policy.decide
    for day in range(1, n):
        if decide(Prefix(prices, day)):
            return TradeOutcome(day, prices[day - 1])
    return TradeOutcome(n, prices[-1])


# Randomized reference player. Levels m * 2**j, j uniform in {0..k-1}.


def geometric_levels(bounds: MarketBounds, strict: bool = False) -> list[float]:
    """Reservation prices ``m * 2**j`` for ``j = 0..k-1`` with ``k = ceil(log2(M/m))``.

    In strict mode ``M/m`` must be an exact power of two with ``k >= 1``.
    Otherwise levels above ``M`` are clamped to ``M`` and ``k`` is at least 1.
    """
    phi = bounds.fluctuation
    mantissa, exponent = math.frexp(phi)
    dyadic = mantissa == 0.5 and exponent - 1 >= 1
    if strict and not dyadic:
        raise NonDyadicRatio(f"M/m = {phi!r} is not a power of two >= 2")
    k = exponent - 1 if dyadic else max(1, math.ceil(math.log2(phi)))
    return [min(bounds.m * 2.0**j, bounds.M) for j in range(k)]


def randomized_geometric_player(
    bounds: MarketBounds,
    random_source: int | np.random.Generator,
    strict: bool = False,
) -> DecisionPolicy:
    """Draw one geometric level uniformly and play its reservation price.

    ``random_source`` is a seed for ``numpy``'s PCG64 generator or a
    generator instance; equal seeds give equal policies.
    """
    levels = geometric_levels(bounds, strict)
    rng = (
        random_source
        if isinstance(random_source, np.random.Generator)
        else np.random.Generator(np.random.PCG64(random_source))
    )
    j = int(rng.integers(len(levels)))
    policy = make_rpp(levels[j])
    return DecisionPolicy(policy.decide, f"random-geo[j={j}]:{policy.label}")


def expected_profit_randomized(
    bounds: MarketBounds, seq: PriceSequence, strict: bool = False
) -> float:
    """Exact expected profit of the geometric player, by enumerating its levels."""
    levels = geometric_levels(bounds, strict)
    return math.fsum(run_policy(make_rpp(t), seq).profit for t in levels) / len(levels)


def expected_ratio_randomized(
    bounds: MarketBounds, seq: PriceSequence, strict: bool = False
) -> float:
    """``OPT / E[profit]`` for the geometric player on ``seq``."""
    return optimal_offline(seq).profit / expected_profit_randomized(bounds, seq, strict)
