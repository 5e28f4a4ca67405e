"""Closed-form bounds, the advice-vs-randomization comparison, and tightness certification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .adversary import adaptive_lower_bound, build_staircase, pigeonhole_check
from .errors import BudgetTooSmall, CrossoverUndefined, NoWitness
from .market import MarketBounds, PriceSequence, competitive_ratio, optimal_offline
from .oracle import best_index
from .strategies import ThresholdFamily, check_bits, run_policy, threshold_family


def advice_bound(b: float, fluctuation: float) -> float:
    """Guaranteed ratio with ``b`` advice bits: ``fluctuation ** (1 / (2**b + 1))``.

    ``b`` may be real-valued for drawing the continuous curve.
    """
    if fluctuation < 1:
        raise ValueError(f"fluctuation ratio must be >= 1, got {fluctuation!r}")
    return fluctuation ** (1.0 / (2.0**b + 1.0))


def randomized_bounds(fluctuation: float) -> tuple[float, float]:
    """Known randomized upper and lower bounds, ``(log2 phi, log2 phi / 2)``."""
    if fluctuation < 1:
        raise ValueError(f"fluctuation ratio must be >= 1, got {fluctuation!r}")
    upper = math.log(fluctuation) / math.log(2)
    return upper, upper / 2


def crossover_bits(fluctuation: float) -> float:
    """Advice budget beyond which the advice bound drops below the randomized lower bound.

    Solves ``advice_bound(b) == log2(phi) / 2`` for real ``b``, which needs
    ``phi > 4``.
    """
    if not fluctuation > 4:
        raise CrossoverUndefined(
            f"crossover needs M/m > 4 (inner logarithm must be positive), got {fluctuation!r}"
        )
    log_phi = math.log(fluctuation) / math.log(2)
    inner = math.log(log_phi / 2) / math.log(2)
    return math.log(log_phi / inner - 1) / math.log(2)


@dataclass(frozen=True)
class BoundCurve:
    fluctuation: float
    rows: tuple[tuple[int, float], ...]
    det_bound: float
    rand_upper: float
    rand_lower: float
    crossover: float | None
    dense: tuple[tuple[float, float], ...] = ()


def figure_data(fluctuation: float, b_max: int = 10, grid_step: float = 0.05) -> BoundCurve:
    """Advice bound at every integer ``b <= b_max`` plus a dense real-valued grid."""
    if b_max < 0:
        raise ValueError(f"need b_max >= 0, got {b_max}")
    rows = tuple((b, advice_bound(b, fluctuation)) for b in range(b_max + 1))
    grid = np.round(np.arange(0.0, b_max + grid_step / 2, grid_step), 10)
    dense = tuple((float(x), advice_bound(float(x), fluctuation)) for x in grid)
    upper, lower = randomized_bounds(fluctuation)
    try:
        crossover = crossover_bits(fluctuation)
    except CrossoverUndefined:
        crossover = None
    return BoundCurve(
        fluctuation=fluctuation,
        rows=rows,
        det_bound=math.sqrt(fluctuation),
        rand_upper=upper,
        rand_lower=lower,
        crossover=crossover,
        dense=dense,
    )


def empirical_ratio_table(
    b_max: int, bounds: MarketBounds, n_budget: int
) -> list[tuple[int, float, float]]:
    """``(b, measured forced ratio, closed form)`` for the advice family at each ``b``."""
    if n_budget < (1 << b_max) + 1:
        raise BudgetTooSmall(f"need n_budget >= 2**{b_max} + 1, got {n_budget}")
    table = []
    for b in range(b_max + 1):
        family = threshold_family(b, bounds)
        transcript = adaptive_lower_bound(b, n_budget, bounds, family.policies())
        table.append((b, transcript.forced_ratio, advice_bound(b, bounds.fluctuation)))
    return table


# Certification: lower bound (adversary), upper bound (gap probes), pigeonhole.


def relative_gap(measured: float, expected: float) -> float:
    return abs(measured - expected) / abs(expected)


def gap_probes(family: ThresholdFamily) -> list[PriceSequence]:
    """Inputs that push an advised player to the edge of each reservation band.

    For consecutive levels ``lo < hi`` of ``[m, *thresholds, M]`` the probe
    offers ``lo`` and then the largest float below ``hi`` before collapsing
    to ``m``: the best family member earns ``lo`` while the optimum is just
    under ``hi``. The last band offers ``M`` itself.
    """
    bounds = family.bounds
    if bounds.m == bounds.M:
        return [PriceSequence((bounds.m,), bounds)]
    inner = np.clip(np.sort(family.thresholds), bounds.m, bounds.M)
    levels = [bounds.m, *map(float, inner), bounds.M]
    probes = []
    for lo, hi in zip(levels, levels[1:]):
        if hi <= lo:
            continue
        top = hi if hi == bounds.M else math.nextafter(hi, 0.0)
        head = () if lo == bounds.m else (lo,)
        probes.append(PriceSequence(head + (top, bounds.m), bounds))
    return probes


def advised_ratio(family: ThresholdFamily, seq: PriceSequence) -> float:
    """Competitive ratio of the best-index player on ``seq``."""
    policy = family.policy(best_index(family, seq))
    return competitive_ratio(run_policy(policy, seq), optimal_offline(seq)).ratio


@dataclass(frozen=True)
class CertificateRow:
    b: int
    closed_form: float
    measured: float
    probe_max: float
    transcript_ratio: float
    witness: int | None
    failures: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failures


def certify(
    bounds: MarketBounds,
    b_max: int,
    n: int,
    tol: float = 1e-9,
    perturb: float = 0.0,
) -> list[CertificateRow]:
    """Check, for each ``b <= b_max``, that the advice family is exactly tight.

    * the adaptive adversary forces the closed-form ratio (lower side);
    * the advised player never does worse than it on the adversary's own
      input, and its worst gap probe equals it (upper side);
    * a staircase of length ``n`` has an unsolved member (when ``2**b < n``).

    ``perturb`` scales the largest threshold by ``1 + perturb``; it exists
    so a negative control can show the certificate failing.
    """
    check_bits(b_max)
    if n < (1 << b_max) + 1:
        raise BudgetTooSmall(f"need n >= 2**b_max + 1 = {(1 << b_max) + 1}, got {n}")
    staircase = build_staircase(n, bounds) if bounds.m < bounds.M else None
    rows = []
    for b in range(b_max + 1):
        family = threshold_family(b, bounds)
        if perturb:
            shifted = family.thresholds.copy()
            shifted[-1] *= 1.0 + perturb
            shifted.setflags(write=False)
            family = ThresholdFamily(b, shifted, bounds)
        closed = advice_bound(b, bounds.fluctuation)
        failures = []

        transcript = adaptive_lower_bound(b, n, bounds, family.policies())
        measured = transcript.forced_ratio
        if relative_gap(measured, closed) > tol:
            failures.append(f"forced ratio {measured!r} != {closed!r}")

        transcript_ratio = advised_ratio(family, transcript.sequence)
        if transcript_ratio > closed * (1 + tol):
            failures.append(f"advised ratio {transcript_ratio!r} on transcript exceeds bound")

        probe_max = max(advised_ratio(family, s) for s in gap_probes(family))
        if relative_gap(probe_max, closed) > tol:
            failures.append(f"worst gap probe {probe_max!r} != {closed!r}")

        witness = None
        if staircase is not None and (1 << b) < n:
            try:
                witness = pigeonhole_check(staircase, family.policies()).index
            except NoWitness as exc:
                failures.append(str(exc))
        rows.append(
            CertificateRow(b, closed, measured, probe_max, transcript_ratio, witness, tuple(failures))
        )
    return rows
