from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.special import erfc

from heatlab.geometry import Box, Polygon, random_convex_polygon
from heatlab.harness import (
    SuiteReport,
    duhamel_mass_check,
    duhamel_u,
    dyadic_grid,
    layer_cake_identity_check,
    layer_cake_sides,
    mc_volume,
    pmap,
)


def duhamel_closed_form(L, t, x, m_max=20):
    """u = 2 sum_m F(x - m L) with F(a) = int_0^t g(tau, a) dtau for the 1-D Gaussian g."""

    def F(a):
        a = abs(a)
        return math.sqrt(t / math.pi) * math.exp(-a * a / (4 * t)) - 0.5 * a * erfc(a / (2 * math.sqrt(t)))

    return 2 * math.fsum(F(x - m * L) for m in range(-m_max, m_max + 1))


def _square(x):
    return np.ones(len(x), dtype=bool)


def _disk(x):
    return np.sum((x - 0.5) ** 2, axis=1) < 0.25


def test_mc_volume_trivial_and_disk():
    est, se = mc_volume(_square, [0, 0], [1, 1], 10_000, seed=0)
    assert (est, se) == (1.0, 0.0)
    est, se = mc_volume(_disk, [0, 0], [1, 1], 1_000_000, seed=42)
    assert abs(est - math.pi / 4) <= 4 * se
    assert mc_volume(_disk, [0, 0], [1, 1], 100_000, seed=7) == mc_volume(_disk, [0, 0], [1, 1], 100_000, seed=7)
    with pytest.raises(ValueError):
        mc_volume(_disk, [0, 0], [1, 1], 100, seed=0)


@pytest.mark.parametrize("body", [Box([1.0, 1.0]), Box([2.0, 1.0]),
                                  Polygon([[0, 0], [2, 0], [1.5, 1], [0.2, 1.3]])])
@pytest.mark.parametrize("t, r", [(0.01, 0.2), (0.04, 0.1), (0.02, 0.5)])
def test_layer_cake_identity(body, t, r):
    assert layer_cake_identity_check(body, t, r) <= 1e-8


def test_layer_cake_limits():
    sq = Box([1.0, 1.0])
    # r past the inradius: every point is in the strip and the boundary term vanishes
    lhs, rhs = layer_cake_sides(sq, 0.01, 3.0)
    assert lhs == pytest.approx(rhs, abs=1e-10)
    # very large t: both sides tend to |{d < r}|
    lhs, rhs = layer_cake_sides(sq, 1e6, 0.2)
    assert lhs == pytest.approx(1 - 0.6**2, rel=1e-6) and rhs == pytest.approx(lhs, abs=1e-10)


def test_layer_cake_random_polygons():
    rng = np.random.default_rng(11)
    for _ in range(5):
        p = random_convex_polygon(rng)
        assert layer_cake_identity_check(p, 0.01, 0.5 * p.metrics.inradius) <= 1e-8


@pytest.mark.parametrize("t", [0.01, 0.05, 0.2])
@pytest.mark.parametrize("x", [0.0, 0.1, 0.5, 0.93])
def test_duhamel_u_matches_closed_form(t, x):
    assert duhamel_u(1.0, t, x) == pytest.approx(duhamel_closed_form(1.0, t, x), abs=1e-11)


def test_duhamel_symmetry_and_mass():
    t = 0.05
    assert duhamel_u(1.0, t, 0.2) == pytest.approx(duhamel_u(1.0, t, 0.8), abs=1e-12)
    for t in (0.01, 0.05, 0.2):
        assert duhamel_mass_check(1.0, t) <= 1e-6
    assert duhamel_mass_check(1.0, 1e-5) <= 1e-9
    with pytest.raises(ValueError):
        duhamel_mass_check(1.0, 0.0)


def test_dyadic_grid_and_pmap():
    np.testing.assert_array_equal(dyadic_grid(2, 4), [0.25, 0.125, 0.0625])
    assert pmap(math.sqrt, [1.0, 4.0, 9.0], workers=2) == [1.0, 2.0, 3.0]
    assert pmap(math.sqrt, [16.0]) == [4.0]


def test_suite_report_checks():
    rep = SuiteReport("x", {}, seed=3)
    rep.check("a", 0.5, 1.0)
    rep.check("b", 2.0, 1.0)
    rep.check("c", 9.0, 0.0, ok=True)
    assert not rep.passed
    assert [a.name for a in rep.failures()] == ["b"]
    assert all(a.tolerance is not None for a in rep.assertions)
