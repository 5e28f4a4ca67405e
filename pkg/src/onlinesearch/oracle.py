"""Offline oracles that see the whole sequence and write advice for the player."""

from __future__ import annotations

import numpy as np

from .market import MarketBounds, PriceSequence, optimal_offline
from .strategies import ThresholdFamily, threshold_family
from .tape import AdviceTape, encode_day_fixed, encode_day_self_delimiting, to_bits


def family_profits(family: ThresholdFamily, seq: PriceSequence) -> np.ndarray:
    """Profit of every reservation price in ``family`` on ``seq``, in family order.

    RPP(t) trades on the first day whose running maximum reaches ``t``, so a
    binary search over the running maximum replaces ``2**b`` separate runs.
    """
    prices = np.asarray(seq.prices)
    running_max = np.maximum.accumulate(prices)
    first_day = np.searchsorted(running_max, family.thresholds, side="left")
    return prices[np.minimum(first_day, len(prices) - 1)]


def best_index(family: ThresholdFamily, seq: PriceSequence) -> int:
    """Smallest 1-based index whose policy earns the most on ``seq``."""
    return int(np.argmax(family_profits(family, seq))) + 1


def oracle_threshold_index(b: int, bounds: MarketBounds, seq: PriceSequence) -> AdviceTape:
    """Write ``i - 1`` in exactly ``b`` big-endian bits, ``i`` being the best family index.

    The best index maximizes profit, which is the same as minimizing the
    competitive ratio since the optimum is fixed per sequence.
    """
    family = threshold_family(b, bounds)
    return AdviceTape(to_bits(best_index(family, seq) - 1, b))


def oracle_optimal_day(seq: PriceSequence, n_known: bool = True) -> AdviceTape:
    """Advice for optimal play: the day of the (earliest) maximum price.

    With ``n_known`` the fixed-length code is used; otherwise the
    self-delimiting one, which needs ``n >= 2``.
    """
    day = optimal_offline(seq).day
    if n_known:
        return encode_day_fixed(day, seq.n)
    return encode_day_self_delimiting(day, max(seq.n, 2))
