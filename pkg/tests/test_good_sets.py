from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import brentq
from shapely.geometry import Polygon as SPolygon

from heatlab.errors import NormalUndefined, OutOfDomain, ParamOutOfRange
from heatlab.geometry import Box, Polygon, boundary_neighborhood_volume, distance_to_complement, random_convex_polygon
from heatlab.good_sets import (
    C_STAR,
    a_star,
    a_star_residual,
    bad_set_volume,
    bad_set_volume_exact,
    boundary_length_in_ball,
    cone_ratio_max,
    good_boundary_set,
    good_set_distance_inequalities,
    good_set_report,
    is_good_point,
    local_parametrization_check,
    normal_variation_check,
    nu_bar_p,
    outward_normal,
    sawtooth_contains,
    sawtooth_mask,
    sawtooth_mask_exact,
)
from heatlab.harness import mc_volume

SQ = Box([1.0, 1.0])
seeds = st.integers(0, 2**31 - 1)


def boundary_samples(poly: Polygon, per_edge: int = 4000):
    v = poly.vertices
    w = np.roll(v, -1, axis=0)
    s = np.linspace(0.0, 1.0, per_edge, endpoint=False)
    pts = (v[:, None, :] + s[None, :, None] * (w - v)[:, None, :]).reshape(-1, 2)
    edge = np.repeat(np.arange(len(v)), per_edge)
    return pts, edge


def brute_cone_ratio(poly, x0, r, own_edge, per_edge=20000):
    pts, edge = boundary_samples(poly, per_edge)
    nu = outward_normal(poly, x0)
    y = pts - x0
    n = np.linalg.norm(y, axis=1)
    # the edge through x0 contributes exactly zero
    keep = (n > 0) & (n <= r) & (edge != own_edge)
    if not np.any(keep):
        return 0.0
    return float(np.max(np.abs(y[keep] @ nu) / n[keep]))


def brute_good_measure(poly, R, per_edge=20000):
    """Boundary points x0 whose inward ball of radius R fits inside the polygon."""
    pts, edge = boundary_samples(poly, per_edge)
    centres = pts - R * poly.edge_normals[edge]
    ok = (poly.edge_offsets - centres @ poly.edge_normals.T).min(axis=1) >= R * (1 - 1e-9)
    lengths = np.linalg.norm(np.roll(poly.vertices, -1, axis=0) - poly.vertices, axis=1)
    return float(np.sum(ok * lengths[edge] / per_edge))


def test_outward_normals_square():
    np.testing.assert_allclose(outward_normal(SQ, [0.5, 0.0]), [0.0, -1.0], atol=1e-15)
    np.testing.assert_allclose(outward_normal(SQ, [1.0, 0.3]), [1.0, 0.0], atol=1e-15)
    with pytest.raises(NormalUndefined):
        outward_normal(SQ, [0.0, 0.0])
    with pytest.raises(OutOfDomain):
        outward_normal(SQ, [0.5, 0.5])


@pytest.mark.parametrize("eps, r, x0, good", [(0.1, 0.4, (0.5, 0.0), True), (0.1, 1.2, (0.5, 0.0), False),
                                             (0.45, 1.0, (0.5, 0.0), False), (0.25, 0.1, (0.05, 0.0), False)])
def test_is_good_point_square(eps, r, x0, good):
    assert is_good_point(SQ, x0, eps, r).verified_cone is good


@given(seeds, st.floats(0.05, 0.95), st.floats(0.1, 2.0))
def test_cone_ratio_matches_dense_sampling(seed, frac, rscale):
    poly = random_convex_polygon(np.random.default_rng(seed))
    v = poly.vertices
    x0 = v[0] + frac * (v[1] - v[0])
    r = rscale * poly.metrics.inradius
    exact = cone_ratio_max(poly, x0, r)
    brute = brute_cone_ratio(poly, x0, r, own_edge=0)
    # sampling can only miss the max, and misses it by at most the sampling step
    assert brute <= exact + 1e-12
    assert exact - brute <= 1e-3


def test_good_set_measure_square_and_rectangle():
    assert good_boundary_set(SQ, 0.25, 0.1).measure == pytest.approx(0.8, abs=1e-12)
    assert good_boundary_set(SQ, 0.25, 0.125).measure == 0.0
    assert good_boundary_set(Box([2.0, 1.0]), 0.25, 0.1).measure == pytest.approx(2.8, abs=1e-12)
    as_poly = good_boundary_set(SQ.as_polygon(), 0.25, 0.1)
    assert as_poly.measure == pytest.approx(0.8, abs=1e-12)
    assert good_boundary_set(Box([1.0, 1.0, 1.0]), 0.25, 0.1).measure == pytest.approx(6 * 0.2**2, abs=1e-12)


@given(seeds, st.floats(0.05, 0.5), st.floats(0.1, 0.95))
def test_good_set_measure_matches_ball_fitting(seed, eps, frac):
    poly = random_convex_polygon(np.random.default_rng(seed))
    r = frac * eps * poly.metrics.inradius
    g = good_boundary_set(poly, eps, r)
    assert g.measure == pytest.approx(brute_good_measure(poly, r / eps), abs=2e-3 * poly.metrics.surface)


def test_good_set_rejects_large_r():
    with pytest.raises(ParamOutOfRange):
        good_boundary_set(SQ, 0.25, 0.2)
    with pytest.raises(ParamOutOfRange):
        good_boundary_set(SQ, 0.6, 0.1)


def test_a_star_closed_form_against_root_finding():
    assert a_star(1.0) == 0.0
    assert a_star(0.0) == 1.0
    for beta in np.linspace(0.01, 0.99, 100):
        ref = brentq(lambda a: a - (1 - beta**2 * a / 2 - beta * math.sqrt(1 - a * a)), 0.0, 1.0, xtol=1e-15)
        assert a_star(beta) == pytest.approx(ref, abs=1e-12)
        assert a_star_residual(a_star(beta) + 1e-6, beta) > 0 > a_star_residual(a_star(beta) - 1e-6, beta)


def test_c_star_is_supremum_of_quadratic_defect():
    # below beta ~ 1e-3 the difference 1 - a* loses too many digits to be informative
    beta = np.geomspace(1e-3, 1.0, 4000)
    q = (1 - a_star(beta)) / beta**2
    assert q.max() <= C_STAR * (1 + 1e-8)
    assert q[0] == pytest.approx(C_STAR, rel=1e-3)
    assert C_STAR == pytest.approx((3 + 2 * math.sqrt(2)) / 2)


def test_nu_bar_square_closed_form():
    x0 = np.array([0.5, 0.0])
    assert nu_bar_p(SQ, x0, 0.4).value == 0.0
    # side chords of length sqrt(eta^2 - 1/4), each with normal jump sqrt 2, against the full bottom edge
    eta = 0.6
    c = math.sqrt(eta * eta - 0.25)
    assert nu_bar_p(SQ, x0, eta).value == pytest.approx(2 * math.sqrt(2) * c / (1 + 2 * c), rel=1e-12)


def test_nu_bar_square_against_sampled_boundary():
    sq = Polygon([[0, 0], [1, 0], [1, 1], [0, 1]])
    x0 = np.array([0.5, 0.0])
    pts, edge = boundary_samples(sq, 200_000)
    jump = np.linalg.norm(sq.edge_normals[edge] - outward_normal(sq, x0), axis=1)
    dist = np.linalg.norm(pts - x0, axis=1)
    brute = max(jump[dist < eta].mean() for eta in np.linspace(0.3, 0.6, 61))
    assert nu_bar_p(SQ, x0, 0.6).value == pytest.approx(brute, abs=1e-4)
    assert brute == pytest.approx(0.563980686643793, abs=1e-4)


def test_boundary_length_in_ball_square():
    assert boundary_length_in_ball(SQ, [0.5, 0.5], 0.5) == pytest.approx(0.0, abs=1e-15)
    assert boundary_length_in_ball(SQ, [0.5, 0.5], 0.6) == pytest.approx(8 * math.sqrt(0.36 - 0.25))


def test_sawtooth_contains_examples():
    q = sawtooth_contains(SQ, [0.5, 0.02], 0.25, 0.1)
    assert q.member
    np.testing.assert_allclose(q.matched_x0, [0.5, 0.0])
    assert not sawtooth_contains(SQ, [0.02, 0.01], 0.25, 0.1).member
    assert not sawtooth_contains(SQ, [0.5, 0.06], 0.25, 0.1).member


def brute_sawtooth(poly, X, eps, r, spacing, widen=0.0):
    """Search witnesses sampled every ``spacing``; ``widen`` > 0 enlarges every cone slightly."""
    g = good_boundary_set(poly, eps, r)
    out = np.zeros(len(X), dtype=bool)
    c = math.sqrt(1 - eps * eps) - widen
    for (p, q), e in zip(g.segments, g.edges):
        nu = poly.edge_normals[e]
        n = max(2, int(np.linalg.norm(q - p) / spacing) + 2)
        W = p + np.linspace(0, 1, n)[:, None] * (q - p)
        diff = W[None, :, :] - X[:, None, :]
        dist = np.linalg.norm(diff, axis=2)
        depth = diff @ nu
        out |= np.any((dist < (1 + widen) * r / 2) & (depth > c * dist), axis=1)
    return out & np.all(poly.edge_offsets - X @ poly.edge_normals.T > 0, axis=1)


@given(seeds)
def test_exact_sawtooth_sandwiched_by_brute_force_and_contains_foot_witness(seed):
    rng = np.random.default_rng(seed)
    poly = random_convex_polygon(rng)
    eps = float(rng.uniform(0.1, 0.5))
    r = eps * poly.metrics.inradius * float(rng.uniform(0.3, 0.95))
    lo, hi = poly.bounding_box()
    X = lo + (hi - lo) * rng.random((600, 2))
    d = distance_to_complement(poly, X)
    # at depth h the widened cone is wider than the strict one by about h * widen, so
    # sampling finer than that never misses a member at depth >= r/20
    X = X[(d > r / 20) & (d < r / 2)]
    exact = sawtooth_mask_exact(poly, X, eps, r)
    assert np.all(brute_sawtooth(poly, X, eps, r, spacing=1e-3 * r) <= exact)
    assert np.all(exact <= brute_sawtooth(poly, X, eps, r, spacing=2e-4 * r, widen=0.02))
    assert np.all(sawtooth_mask(poly, X, eps, r) <= exact)


def test_box_and_polygon_sawtooth_agree():
    rng = np.random.default_rng(4)
    X = rng.random((20000, 2))
    for f in (sawtooth_mask, sawtooth_mask_exact):
        np.testing.assert_array_equal(f(SQ, X, 0.25, 0.1), f(SQ.as_polygon(), X, 0.25, 0.1))


def test_bad_set_exact_value_and_monte_carlo():
    s = 0.05
    assert bad_set_volume_exact(SQ, 0.25, 0.1, s) == pytest.approx((1 - (1 - 2 * s) ** 2) - 0.8 * s, abs=1e-15)
    b = bad_set_volume(SQ, 0.25, 0.1, s, n=400_000, seed=42)
    assert abs(b.estimate - b.exact) <= 4 * b.std_error
    with pytest.raises(ParamOutOfRange):
        bad_set_volume_exact(SQ, 0.25, 0.1, 0.06)


@given(seeds)
def test_bad_set_exact_against_independent_monte_carlo(seed):
    rng = np.random.default_rng(seed)
    poly = random_convex_polygon(rng)
    eps = float(rng.uniform(0.1, 0.5))
    r = eps * poly.metrics.inradius * float(rng.uniform(0.3, 0.95))
    s = r / 2 * float(rng.uniform(0.2, 1.0))
    lo, hi = poly.bounding_box()

    def pred(X):
        d = distance_to_complement(poly, X)
        return (d > 0) & (d < s) & ~sawtooth_mask(poly, X, eps, r)

    est, se = mc_volume(pred, lo, hi, 200_000, seed=seed)
    assert abs(est - bad_set_volume_exact(poly, eps, r, s)) <= 4.5 * se + 1e-12


def test_bad_ratio_bounded_by_r_over_eps_rin():
    rng = np.random.default_rng(0)
    for _ in range(50):
        poly = random_convex_polygon(rng)
        eps = float(rng.uniform(0.05, 0.5))
        r = eps * poly.metrics.inradius * float(rng.uniform(0.05, 1.0))
        for s in (r / 8, r / 2):
            ratio = bad_set_volume_exact(poly, eps, r, s) / boundary_neighborhood_volume(poly, s)
            assert ratio <= r / (eps * poly.metrics.inradius) + 1e-12


def test_distance_inequalities_on_flat_configuration():
    # a flat face makes the cone exact: y - x0 is orthogonal to the normal
    x0, nu = np.array([0.5, 0.0]), np.array([0.0, -1.0])
    rng = np.random.default_rng(1)
    for _ in range(200):
        eps = float(rng.uniform(0.05, 0.45))
        phi = math.asin(eps) * rng.uniform(-1, 1)
        rho = rng.uniform(1e-3, 0.05)
        x = x0 + rho * np.array([math.sin(phi), math.cos(phi)])
        y = np.array([rng.uniform(0.0, 1.0), 0.0])
        res = good_set_distance_inequalities(x0, nu, eps, x, y, distance_to_complement(SQ, x))
        assert max(res.values()) <= 1e-12


def test_normal_variation_and_local_graph_on_random_polygons():
    rng = np.random.default_rng(2)
    for _ in range(30):
        poly = random_convex_polygon(rng)
        eps = float(rng.uniform(0.1, 0.5))
        r = eps * poly.metrics.inradius * float(rng.uniform(0.3, 1.0))
        g = good_boundary_set(poly, eps, r)
        for p, q in g.segments:
            x0 = 0.5 * (p + q)
            nv = normal_variation_check(poly, x0, g.R, 0.999 * g.R)
            assert nv["min_dot_minus_astar"] >= -1e-12
            assert nv["max_normal_gap"] <= nv["normal_gap_bound"] + 1e-12
            assert nv["c_empirical"] <= C_STAR
            lp = local_parametrization_check(poly, x0, eps, r)
            assert lp["ok"] and lp["convex"]
            assert lp["max_slope"] <= lp["slope_bound"] + 1e-12


def test_good_set_report_square():
    rep = good_set_report(SQ, 0.25, 0.1, [0.02, 0.05], n=100_000, seed=3)
    assert rep.good_measure == pytest.approx(0.8)
    assert rep.nu_bar == [0.0, 0.0, 0.0, 0.0]
    assert 0.0 <= rep.witness_bias <= 1.0
    assert len(rep.bad) == 2
