"""Problem model for online search: price corridor, sequences, outcomes, ratios.

A sequence ``(p_1, ..., p_n)`` is revealed one price per day. The player may
trade once; if it has not traded by day ``n`` it must take ``p_n``. Days are
1-based throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import EmptySequence, InconsistentOutcomes, InvalidBounds, PriceOutOfRange


@dataclass(frozen=True)
class MarketBounds:
    """Known price corridor ``0 < m <= M``."""

    m: float
    M: float

    def __post_init__(self) -> None:
        m, M = float(self.m), float(self.M)
        if not (math.isfinite(m) and math.isfinite(M)):
            raise InvalidBounds(f"bounds must be finite, got m={m!r}, M={M!r}")
        if m <= 0:
            raise InvalidBounds(f"lower bound must be positive, got m={m!r}")
        if m > M:
            raise InvalidBounds(f"need m <= M, got m={m!r}, M={M!r}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "M", M)

    @property
    def fluctuation(self) -> float:
        """The fluctuation ratio ``M/m``."""
        return self.M / self.m

    def contains(self, price: float) -> bool:
        return self.m <= price <= self.M


@dataclass(frozen=True)
class PriceSequence:
    prices: tuple[float, ...]
    bounds: MarketBounds

    def __post_init__(self) -> None:
        prices = tuple(float(p) for p in self.prices)
        if not prices:
            raise EmptySequence("a price sequence needs at least one day")
        for day, p in enumerate(prices, start=1):
            if not self.bounds.contains(p):
                raise PriceOutOfRange(day, p, self.bounds.m, self.bounds.M)
        object.__setattr__(self, "prices", prices)

    @property
    def n(self) -> int:
        return len(self.prices)

    def __len__(self) -> int:
        return len(self.prices)

    def __getitem__(self, day: int) -> float:
        """Price on a 1-based ``day``."""
        if not 1 <= day <= len(self.prices):
            raise IndexError(f"day {day} outside 1..{len(self.prices)}")
        return self.prices[day - 1]


@dataclass(frozen=True)
class TradeOutcome:
    day: int
    profit: float


@dataclass(frozen=True)
class CompetitiveReport:
    alg_profit: float
    opt_profit: float
    ratio: float


def validate_sequence(prices: Iterable[float], bounds: MarketBounds) -> PriceSequence:
    """Build a :class:`PriceSequence`, raising on empty input or out-of-range prices.

    The first offending day is reported by :class:`PriceOutOfRange`.
    """
    return PriceSequence(tuple(prices), bounds)


def optimal_offline(seq: PriceSequence) -> TradeOutcome:
    """Offline optimum: the earliest day carrying the maximum price."""
    best_day, best = 1, seq.prices[0]
    for day, p in enumerate(seq.prices[1:], start=2):
        if p > best:
            best_day, best = day, p
    return TradeOutcome(best_day, best)


def competitive_ratio(alg: TradeOutcome, opt: TradeOutcome) -> CompetitiveReport:
    """Ratio ``opt/alg`` for a maximization problem; always at least 1."""
    if alg.profit > opt.profit:
        raise InconsistentOutcomes(
            f"online profit {alg.profit!r} exceeds offline optimum {opt.profit!r}"
        )
    return CompetitiveReport(alg.profit, opt.profit, opt.profit / alg.profit)
