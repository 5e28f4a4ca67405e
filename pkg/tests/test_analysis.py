import math

import pytest
from hypothesis import given, strategies as st

from onlinesearch import (
    MarketBounds,
    advice_bound,
    certify,
    crossover_bits,
    empirical_ratio_table,
    figure_data,
    randomized_bounds,
    threshold_family,
)
from onlinesearch.analysis import advised_ratio, gap_probes
from onlinesearch.errors import BudgetTooSmall, CrossoverUndefined

import reference


def test_advice_bound_examples():
    assert advice_bound(1, 8) == pytest.approx(2, rel=1e-12)
    assert advice_bound(0, 100) == pytest.approx(10, rel=1e-12)
    assert advice_bound(3, 100) == pytest.approx(1.6681005372000588, rel=1e-12)
    assert advice_bound(60, 1e9) == pytest.approx(1, abs=1e-12)


def test_randomized_bounds():
    upper, lower = randomized_bounds(100)
    assert upper == pytest.approx(6.644, abs=1e-3)
    assert lower == pytest.approx(3.322, abs=1e-3)
    assert randomized_bounds(2) == (1, 0.5)
    assert randomized_bounds(1) == (0, 0)


def test_crossover_at_100():
    assert crossover_bits(100) == pytest.approx(1.503, abs=1e-3)
    assert advice_bound(2, 100) == pytest.approx(2.512, abs=1e-3)
    assert advice_bound(1, 100) == pytest.approx(4.642, abs=1e-3)
    assert advice_bound(2, 100) < randomized_bounds(100)[1] < advice_bound(1, 100)


@pytest.mark.parametrize("phi", [4.0001, 5, 16, 100, 1e3, 1e6, 1e15])
def test_crossover_is_root_of_curve_difference(phi):
    lower = randomized_bounds(phi)[1]
    root = reference.bisect_root(lambda b: advice_bound(b, phi) - lower, -5, 60)
    assert crossover_bits(phi) == pytest.approx(root, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("phi", [4, 3, 1])
def test_crossover_undefined(phi):
    with pytest.raises(CrossoverUndefined):
        crossover_bits(phi)


@given(st.floats(4.01, 1e12))
def test_crossover_brackets(phi):
    bstar = crossover_bits(phi)
    lower = randomized_bounds(phi)[1]
    if bstar != math.floor(bstar) and bstar >= 0:
        assert advice_bound(math.ceil(bstar), phi) < lower <= advice_bound(math.floor(bstar), phi)


@given(st.floats(1.0001, 1e12))
def test_bound_monotone_and_convex(phi):
    values = [advice_bound(b, phi) for b in range(12)]
    diffs = [a - b for a, b in zip(values, values[1:])]
    assert all(d >= 0 for d in diffs)
    assert all(d1 >= d2 - 1e-15 for d1, d2 in zip(diffs, diffs[1:]))
    assert values[0] == pytest.approx(math.sqrt(phi), rel=1e-12)
    assert values[0] > values[1]


def test_figure_data_at_100():
    curve = figure_data(100, 10)
    assert curve.rows[0] == (0, pytest.approx(10))
    assert curve.det_bound == pytest.approx(10)
    assert curve.rand_upper == pytest.approx(6.644, abs=1e-3)
    assert curve.rand_lower == pytest.approx(3.322, abs=1e-3)
    assert curve.crossover == pytest.approx(1.503, abs=1e-3)
    assert curve.rows[3][1] == pytest.approx(1.668, abs=1e-3)
    assert len(curve.rows) == 11
    assert len(curve.dense) == 201
    assert curve.dense[20] == (1.0, pytest.approx(curve.rows[1][1]))


def test_figure_data_flat():
    curve = figure_data(1, 5)
    assert all(v == 1 for _, v in curve.rows)
    assert (curve.rand_upper, curve.rand_lower, curve.crossover) == (0, 0, None)


@pytest.mark.parametrize(
    "b_max, m, M, n, expected",
    [(1, 1, 8, 3, 2.0), (0, 1, 100, 2, 10.0), (2, 1, 32, 5, 2.0)],
)
def test_empirical_ratio_table(b_max, m, M, n, expected):
    table = empirical_ratio_table(b_max, MarketBounds(m, M), n)
    b, measured, closed = table[-1]
    assert b == b_max
    assert measured == pytest.approx(expected, rel=1e-9)
    assert closed == pytest.approx(expected, rel=1e-9)
    for _, measured, closed in table:
        assert measured == pytest.approx(closed, rel=1e-9)


def test_empirical_table_budget():
    with pytest.raises(BudgetTooSmall):
        empirical_ratio_table(3, MarketBounds(1, 8), 8)


def test_gap_probes_hit_every_band():
    bounds = MarketBounds(1, 32)
    family = threshold_family(2, bounds)
    probes = gap_probes(family)
    assert len(probes) == 5
    ratios = [advised_ratio(family, p) for p in probes]
    assert all(r <= 2 * (1 + 1e-12) for r in ratios)
    assert max(ratios) == pytest.approx(2, rel=1e-12)


def test_certify_passes_and_negative_control_fails():
    bounds = MarketBounds(1, 100)
    rows = certify(bounds, 6, 65)
    assert all(r.passed for r in rows)
    assert [r.witness is not None for r in rows] == [True] * 7
    bad = certify(bounds, 3, 9, perturb=1e-3)
    assert not any(r.passed for r in bad)
    assert all("gap probe" in r.failures[0] for r in bad)


def test_certify_flat_market():
    rows = certify(MarketBounds(2, 2), 2, 5)
    assert all(r.passed and r.witness is None for r in rows)
