"""Flat boundary pieces of convex bodies: good points, rolling-ball good sets,
sawtooth regions, normal oscillation and the threshold a*(beta).

Polygons are handled exactly. Axis-aligned boxes use closed forms in any
dimension, and 2-D boxes fall back to their polygon for the pointwise
queries. Points are (eps, r)-good when every boundary point within distance
r lies in the double cone |(y - x0) . nu| < eps |y - x0|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NormalUndefined, OutOfDomain, ParamOutOfRange, UnsupportedVariant
from .geometry import (
    Ball,
    Box,
    ConvexBody,
    Polygon,
    _eroded_vertices,
    boundary_neighborhood_volume,
    distance_to_complement,
)

__all__ = [
    "GoodPointCertificate",
    "SawtoothQuery",
    "NormalOscillation",
    "GoodSet",
    "BadSetEstimate",
    "GoodSetReport",
    "outward_normal",
    "is_good_point",
    "cone_ratio_max",
    "good_boundary_set",
    "sawtooth_contains",
    "sawtooth_mask",
    "sawtooth_mask_exact",
    "bad_set_volume",
    "bad_set_volume_exact",
    "nu_bar_p",
    "a_star",
    "a_star_residual",
    "C_STAR",
    "good_set_distance_inequalities",
    "normal_variation_check",
    "local_parametrization_check",
    "boundary_length_in_ball",
    "boundary_density",
    "good_set_report",
]

VERTEX_EXCLUSION = 1e-9
ON_BOUNDARY_TOL = 1e-10

# sup over beta in (0,1) of (1 - a*(beta)) / beta^2, attained as beta -> 0
C_STAR = (3 + 2 * math.sqrt(2)) / 2


@dataclass(frozen=True)
class GoodPointCertificate:
    x0: np.ndarray
    normal: np.ndarray
    epsilon: float
    r: float
    verified_cone: bool
    max_ratio: float


@dataclass(frozen=True)
class SawtoothQuery:
    x: np.ndarray
    matched_x0: np.ndarray | None
    member: bool


@dataclass(frozen=True)
class NormalOscillation:
    x0: np.ndarray
    s: float
    p: float
    value: float
    eta_at_max: float
    grid_size: int


@dataclass(frozen=True)
class GoodSet:
    """G_{eps,r} = G^0_R with R = r / eps; ``segments`` only for 2-D bodies."""

    R: float
    measure: float
    segments: list = field(default_factory=list)
    edges: list = field(default_factory=list)


@dataclass(frozen=True)
class BadSetEstimate:
    estimate: float
    std_error: float
    exact: float
    strip_volume: float
    n: int
    seed: int

    @property
    def ratio(self) -> float:
        return self.estimate / self.strip_volume

    @property
    def ratio_se(self) -> float:
        return self.std_error / self.strip_volume

    @property
    def exact_ratio(self) -> float:
        return self.exact / self.strip_volume


@dataclass(frozen=True)
class GoodSetReport:
    epsilon: float
    r: float
    good_measure: float
    surface: float
    bad: list
    witness_bias: float
    nu_bar: list


def _as_polygon(body: ConvexBody) -> Polygon:
    if isinstance(body, Polygon):
        return body
    if isinstance(body, Box) and body.dim == 2:
        return body.as_polygon()
    raise UnsupportedVariant("pointwise good-point queries need a planar polygon or 2-D box")


def _check_eps_r(body: ConvexBody, eps: float, r: float) -> float:
    if not 0 < eps <= 0.5:
        raise ParamOutOfRange(f"epsilon={eps} must lie in (0, 1/2]")
    if not r > 0:
        raise ParamOutOfRange("r must be positive")
    r_in = body.metrics.inradius
    if r > eps * r_in * (1 + 1e-12):
        raise ParamOutOfRange(f"r={r} exceeds eps * r_in = {eps * r_in}")
    return min(r / eps, r_in)


def _edge_frame(poly: Polygon):
    v = poly.vertices
    w = np.roll(v, -1, axis=0) - v
    lengths = np.hypot(w[:, 0], w[:, 1])
    return v, w / lengths[:, None], lengths


def _locate_edge(poly: Polygon, x) -> tuple[int, float]:
    """Edge index and along-edge coordinate of a boundary point."""
    x = np.asarray(x, dtype=float)
    v, u, lengths = _edge_frame(poly)
    scale = max(1.0, float(np.ptp(v, axis=0).max()))
    off = np.abs(poly.edge_offsets - poly.edge_normals @ x)
    tau = np.einsum("ij,ij->i", x - v, u)
    on = (off <= ON_BOUNDARY_TOL * scale) & (tau >= -ON_BOUNDARY_TOL * scale) & (tau <= lengths + ON_BOUNDARY_TOL * scale)
    if not np.any(on):
        raise OutOfDomain(f"{x} is not on the boundary")
    i = int(np.flatnonzero(on)[0])
    if np.min(np.hypot(*(v - x).T)) <= VERTEX_EXCLUSION * scale:
        raise NormalUndefined(f"{x} is a vertex; the normal is not unique there")
    return i, float(tau[i])


def outward_normal(body: ConvexBody, x) -> np.ndarray:
    """Outward unit normal at a boundary point away from vertices."""
    if isinstance(body, Ball):
        x = np.asarray(x, dtype=float)
        n = x - body.center
        return n / np.linalg.norm(n)
    poly = _as_polygon(body)
    i, _ = _locate_edge(poly, x)
    return poly.edge_normals[i].copy()


def _segment_ball_interval(p, u, length, x0, r):
    """tau-range of {p + tau u : 0 <= tau <= length} inside the closed ball B_r(x0)."""
    w = p - x0
    c = w @ u
    disc = c * c - (w @ w - r * r)
    if disc < 0:
        return None
    sq = math.sqrt(disc)
    lo, hi = max(0.0, -c - sq), min(length, -c + sq)
    if lo > hi:
        return None
    return lo, hi


def cone_ratio_max(body: ConvexBody, x0, r: float) -> float:
    """max of |(y - x0) . nu(x0)| / |y - x0| over boundary y in the closed ball B_r(x0).

    Each edge contributes a 1-D maximisation whose only interior stationary
    point is tau* = (a c - b |w|^2) / (b c - a).
    """
    poly = _as_polygon(body)
    x0 = np.asarray(x0, dtype=float)
    i0, _ = _locate_edge(poly, x0)
    nu = poly.edge_normals[i0]
    v, u, lengths = _edge_frame(poly)
    best = 0.0
    for j in range(len(v)):
        if j == i0:
            continue
        span = _segment_ball_interval(v[j], u[j], lengths[j], x0, r)
        if span is None:
            continue
        w = v[j] - x0
        a, b, c, ww = w @ nu, u[j] @ nu, w @ u[j], w @ w
        cands = [span[0], span[1]]
        den = b * c - a
        if den != 0.0:
            ts = (a * c - b * ww) / den
            if span[0] < ts < span[1]:
                cands.append(ts)
        for tau in cands:
            y = w + tau * u[j]
            ny = math.hypot(y[0], y[1])
            if ny > 0:
                best = max(best, abs(y @ nu) / ny)
    return best


def is_good_point(body: ConvexBody, x0, eps: float, r: float) -> GoodPointCertificate:
    """Exact (eps, r)-good test for a point in the relative interior of an edge.

    The cone condition is strict on the open ball; the maximum is taken over
    the closed ball, which can only make the verdict more cautious.
    """
    if not 0 < eps <= 0.5:
        raise ParamOutOfRange(f"epsilon={eps} must lie in (0, 1/2]")
    nu = outward_normal(body, x0)
    m = cone_ratio_max(body, x0, r)
    return GoodPointCertificate(np.asarray(x0, dtype=float), nu, eps, r, bool(m < eps), m)


def _polygon_good_intervals(poly: Polygon, R: float) -> np.ndarray:
    """Per-edge [lo, hi] along-edge intervals of G^0_R; lo > hi marks an empty edge."""
    v, u, lengths = _edge_frame(poly)
    K = _eroded_vertices(poly, R)
    m = len(v)
    out = np.tile(np.array([1.0, 0.0]), (m, 1))
    if len(K) == 0:
        return out
    scale = max(1.0, float(np.ptp(v, axis=0).max()))
    tol = 1e-9 * scale
    for i in range(m):
        on = np.abs(K @ poly.edge_normals[i] - (poly.edge_offsets[i] - R)) <= tol
        if not np.any(on):
            continue
        tau = (K[on] + R * poly.edge_normals[i] - v[i]) @ u[i]
        out[i] = [max(0.0, tau.min()), min(lengths[i], tau.max())]
    return out


def good_boundary_set(body: ConvexBody, eps: float, r: float) -> GoodSet:
    """Boundary points touched by an inscribed ball of radius R = r / eps."""
    R = _check_eps_r(body, eps, r)
    if isinstance(body, Ball):
        return GoodSet(R, body.metrics.surface)
    if isinstance(body, Box):
        L = body.lengths
        shrunk = np.maximum(L - 2 * R, 0.0)
        faces = [2 * float(np.prod(np.delete(shrunk, i))) for i in range(body.dim)]
        measure = math.fsum(faces)
        if body.dim != 2:
            return GoodSet(R, measure)
        segs, edges = _segments(body.as_polygon(), R)
        return GoodSet(R, measure, segs, edges)
    segs, edges = _segments(body, R)
    measure = math.fsum(float(np.linalg.norm(q - p)) for p, q in segs)
    return GoodSet(R, measure, segs, edges)


def _segments(poly: Polygon, R: float):
    v, u, _ = _edge_frame(poly)
    iv = _polygon_good_intervals(poly, R)
    segs, edges = [], []
    for i, (lo, hi) in enumerate(iv):
        if hi > lo:
            segs.append((v[i] + lo * u[i], v[i] + hi * u[i]))
            edges.append(i)
    return segs, edges


# ---------------------------------------------------------------- sawtooth


def sawtooth_mask(body: ConvexBody, X, eps: float, r: float, chunk: int = 200_000) -> np.ndarray:
    """Foot-point witness for membership in the sawtooth region of G_{eps,r}.

    A point counts when its nearest boundary point is unique, lies in the good
    set, and is closer than r/2. This under-approximates the union of cones.
    """
    R = _check_eps_r(body, eps, r)
    X = np.atleast_2d(np.asarray(X, dtype=float))
    out = np.empty(len(X), dtype=bool)
    for k in range(0, len(X), chunk):
        out[k : k + chunk] = _foot_mask(body, X[k : k + chunk], R, r)
    return out


def _foot_mask(body, X, R, r):
    if isinstance(body, Ball):
        d = body.radius - np.linalg.norm(X - body.center, axis=1)
        off_center = np.linalg.norm(X - body.center, axis=1) > 0
        return (d > 0) & (d < r / 2) & off_center
    if isinstance(body, Box):
        lo = X - body.origin
        hi = body.origin + body.lengths - X
        slack = np.concatenate([lo, hi], axis=1)
        part = np.partition(slack, 1, axis=1)
        d, second = part[:, 0], part[:, 1]
        tol = 1e-12 * float(body.lengths.max())
        k = np.argmin(slack, axis=1) % body.dim
        inside = (lo >= R - tol) & (hi >= R - tol)
        inside[np.arange(len(X)), k] = True
        return (d > 0) & (second - d > tol) & (d < r / 2) & inside.all(axis=1)
    poly = body
    v, u, _ = _edge_frame(poly)
    iv = _polygon_good_intervals(poly, R)
    slack = poly.edge_offsets - X @ poly.edge_normals.T
    if slack.shape[1] > 1:
        part = np.partition(slack, 1, axis=1)
        d, second = part[:, 0], part[:, 1]
    else:
        d, second = slack[:, 0], np.full(len(X), np.inf)
    i = np.argmin(slack, axis=1)
    foot = X + d[:, None] * poly.edge_normals[i]
    tau = np.einsum("ij,ij->i", foot - v[i], u[i])
    tol = 1e-12 * max(1.0, float(np.ptp(v, axis=0).max()))
    in_g = (tau >= iv[i, 0] - tol) & (tau <= iv[i, 1] + tol)
    return (d > 0) & (second - d > tol) & (d < r / 2) & in_g


def sawtooth_mask_exact(body: ConvexBody, X, eps: float, r: float) -> np.ndarray:
    """Exact membership in the union of cones over all of G_{eps,r}.

    For a witness on a flat face at depth h, the admissible witnesses form a
    disc of squared radius min(h^2 / (1 - eps^2), r^2 / 4) - h^2 in the face.
    """
    R = _check_eps_r(body, eps, r)
    X = np.atleast_2d(np.asarray(X, dtype=float))
    lim = lambda h: np.minimum(h * h / (1 - eps * eps), r * r / 4) - h * h
    if isinstance(body, Box):
        L, o = body.lengths, body.origin
        out = np.zeros(len(X), dtype=bool)
        lo_g, hi_g = o + R, o + L - R
        gap = np.maximum(np.maximum(lo_g - X, X - hi_g), 0.0)
        if np.any(hi_g < lo_g):
            return out
        for k in range(body.dim):
            other = np.delete(gap, k, axis=1)
            dist2 = np.sum(other**2, axis=1)
            for h in (X[:, k] - o[k], o[k] + L[k] - X[:, k]):
                out |= (h > 0) & (dist2 < lim(h))
        return out & (body.contains(X))
    if isinstance(body, Ball):
        return sawtooth_mask(body, X, eps, r)
    poly = body
    v, u, _ = _edge_frame(poly)
    iv = _polygon_good_intervals(poly, R)
    out = np.zeros(len(X), dtype=bool)
    slack = poly.edge_offsets - X @ poly.edge_normals.T
    for i, (lo, hi) in enumerate(iv):
        if hi < lo:
            continue
        h = slack[:, i]
        tau = (X - v[i]) @ u[i]
        gap = np.maximum(np.maximum(lo - tau, tau - hi), 0.0)
        out |= (h > 0) & (gap * gap < lim(h))
    return out & np.all(slack > 0, axis=1)


def sawtooth_contains(body: ConvexBody, x, eps: float, r: float) -> SawtoothQuery:
    x = np.asarray(x, dtype=float)
    member = bool(sawtooth_mask(body, x[None, :], eps, r)[0])
    foot = None
    if member:
        if isinstance(body, Ball):
            c = x - body.center
            foot = body.center + body.radius * c / np.linalg.norm(c)
        elif isinstance(body, Box):
            lo = x - body.origin
            hi = body.origin + body.lengths - x
            foot = x.copy()
            k = int(np.argmin(np.minimum(lo, hi)))
            foot[k] = body.origin[k] if lo[k] <= hi[k] else body.origin[k] + body.lengths[k]
        else:
            slack = body.edge_offsets - body.edge_normals @ x
            i = int(np.argmin(slack))
            foot = x + slack[i] * body.edge_normals[i]
    return SawtoothQuery(x, foot, member)


# ---------------------------------------------------------------- bad set


def bad_set_volume_exact(body: ConvexBody, eps: float, r: float, s: float) -> float:
    """|{d < s}| minus the foot-witness good part, which is G x [0, s) for s <= r/2."""
    if not 0 < s <= r / 2:
        raise ParamOutOfRange(f"s={s} must lie in (0, r/2]")
    g = good_boundary_set(body, eps, r)
    if isinstance(body, Ball):
        return 0.0
    return boundary_neighborhood_volume(body, s) - s * g.measure


def bad_set_volume(body: ConvexBody, eps: float, r: float, s: float, n: int = 200_000, seed: int = 0) -> BadSetEstimate:
    """Monte Carlo |{d < s} minus sawtooth| with the exact witness value alongside."""
    exact = bad_set_volume_exact(body, eps, r, s)
    lo, hi = body.bounding_box()
    rng = np.random.default_rng(seed)
    vol = float(np.prod(hi - lo))
    hits = 0
    chunk = 250_000
    for k in range(0, n, chunk):
        m = min(chunk, n - k)
        X = lo + (hi - lo) * rng.random((m, len(lo)))
        d = distance_to_complement(body, X)
        near = (d > 0) & (d < s)
        hits += int(np.count_nonzero(near & ~sawtooth_mask(body, X, eps, r)))
    p = hits / n
    return BadSetEstimate(
        estimate=p * vol,
        std_error=math.sqrt(p * (1 - p) / n) * vol,
        exact=exact,
        strip_volume=boundary_neighborhood_volume(body, s),
        n=n,
        seed=seed,
    )


# ---------------------------------------------------------------- normals


def boundary_length_in_ball(body: ConvexBody, z, rho: float, per_edge: bool = False):
    """H^1 of the boundary inside the open disc B_rho(z)."""
    poly = _as_polygon(body)
    z = np.asarray(z, dtype=float)
    v, u, lengths = _edge_frame(poly)
    out = np.zeros(len(v))
    for j in range(len(v)):
        span = _segment_ball_interval(v[j], u[j], lengths[j], z, rho)
        if span is not None:
            out[j] = span[1] - span[0]
    return out if per_edge else float(math.fsum(out))


def _oscillation_at(poly, x0, nu0, eta, p):
    v, u, _ = _edge_frame(poly)
    ell = boundary_length_in_ball(poly, x0, eta, per_edge=True)
    jump = np.linalg.norm(poly.edge_normals - nu0, axis=1) ** p
    tot = ell.sum()
    return (float(ell @ jump) / tot) ** (1.0 / p) if tot > 0 else 0.0


def nu_bar_p(body: ConvexBody, x0, s: float, p: float = 1.0, refine: int = 6) -> NormalOscillation:
    """sup over eta < s of the L^p mean of |nu - nu(x0)| on the boundary in B_eta(x0).

    Evaluated at every breakpoint (distances from x0 to vertices and edges)
    and on a 2^refine subdivision of each gap, so the value is a lower bound
    that is exact whenever the sup sits at a breakpoint or at eta -> s.
    """
    if p < 1:
        raise ParamOutOfRange("p must be at least 1")
    poly = _as_polygon(body)
    x0 = np.asarray(x0, dtype=float)
    nu0 = outward_normal(poly, x0)
    v, u, lengths = _edge_frame(poly)
    bps = [s]
    bps += [float(np.linalg.norm(w - x0)) for w in v]
    for j in range(len(v)):
        tau = np.clip((x0 - v[j]) @ u[j], 0.0, lengths[j])
        bps.append(float(np.linalg.norm(v[j] + tau * u[j] - x0)))
    bps = np.unique([b for b in bps if 0 < b <= s])
    knots = np.concatenate([[0.0], bps])
    sub = np.linspace(0, 1, 2**refine + 1)[1:]
    grid = np.unique(np.concatenate([a + (b - a) * sub for a, b in zip(knots[:-1], knots[1:])]))
    vals = np.array([_oscillation_at(poly, x0, nu0, e, p) for e in grid])
    k = int(np.argmax(vals))
    return NormalOscillation(x0, s, p, float(vals[k]), float(grid[k]), len(grid))


def a_star(beta):
    """Switch point of a >= 1 - beta^2 a / 2 - beta sqrt(1 - a^2) on [0, 1]."""
    b2 = np.asarray(beta, dtype=float) ** 2
    val = (4 + 2 * b2 - 2 * b2 * np.sqrt(8 + b2)) / (4 + 8 * b2 + b2 * b2)
    return float(val) if np.ndim(val) == 0 else val


def a_star_residual(a, beta):
    """a - (1 - beta^2 a / 2 - beta sqrt(1 - a^2)); nonnegative exactly on [a*(beta), 1]."""
    a = np.asarray(a, dtype=float)
    return a - (1 - 0.5 * beta * beta * a - beta * np.sqrt(np.clip(1 - a * a, 0.0, None)))


def normal_variation_check(body: ConvexBody, x0, R: float, s: float) -> dict:
    """Compare every supporting normal within B_s(x0) against a*(|x - x0| / R).

    On each edge the normal is constant and the binding point is the one
    closest to x0; at vertices both adjacent edge normals are the extreme
    supporting normals and are covered by the adjacent edges.
    """
    poly = _as_polygon(body)
    x0 = np.asarray(x0, dtype=float)
    nu0 = outward_normal(poly, x0)
    v, u, lengths = _edge_frame(poly)
    worst_dot, worst_gap, worst_norm, c_emp = 1.0, math.inf, 0.0, 0.0
    for j in range(len(v)):
        tau = np.clip((x0 - v[j]) @ u[j], 0.0, lengths[j])
        dist = float(np.linalg.norm(v[j] + tau * u[j] - x0))
        if dist >= s:
            continue
        dot = float(poly.edge_normals[j] @ nu0)
        gap_norm = float(np.linalg.norm(poly.edge_normals[j] - nu0))
        beta = dist / R
        worst_dot = min(worst_dot, dot)
        worst_norm = max(worst_norm, gap_norm)
        if beta > 0:
            worst_gap = min(worst_gap, dot - a_star(min(beta, 1.0)))
        if 1 - dot > 1e-12:
            c_emp = max(c_emp, (1 - dot) / beta**2)
    return {
        "min_dot": worst_dot,
        "min_dot_minus_astar": worst_gap,
        "max_normal_gap": worst_norm,
        "normal_gap_bound": math.sqrt(2 * C_STAR) * s / R,
        "c_empirical": c_emp,
    }


def local_parametrization_check(body: ConvexBody, x0, eps: float, r: float) -> dict:
    """Boundary over B_r(x0) as a graph over the tangent line at x0.

    Rotating so that nu(x0) = (0, -1), each edge piece inside the disc has
    slope tan of the angle between its normal and nu(x0). Reports the largest
    slope, whether phi <= eps |x'| there, and whether slopes increase along
    the boundary (convexity of the graph).
    """
    poly = _as_polygon(body)
    x0 = np.asarray(x0, dtype=float)
    nu0 = outward_normal(poly, x0)
    t0 = np.array([-nu0[1], nu0[0]])
    v, u, lengths = _edge_frame(poly)
    slopes, phi_ratio = [], 0.0
    for j in range(len(v)):
        span = _segment_ball_interval(v[j], u[j], lengths[j], x0, r)
        if span is None or span[1] - span[0] <= 0:
            continue
        n = poly.edge_normals[j]
        cos = float(n @ nu0)
        if cos <= 0:
            slopes.append((float((v[j] + 0.5 * (span[0] + span[1]) * u[j] - x0) @ t0), math.inf))
            continue
        slope = float(-(u[j] @ nu0) / (u[j] @ t0))
        mid = v[j] + 0.5 * (span[0] + span[1]) * u[j]
        slopes.append((float((mid - x0) @ t0), slope))
        for tau in span:
            y = v[j] + tau * u[j] - x0
            xp = abs(float(y @ t0))
            if xp > 0:
                phi_ratio = max(phi_ratio, float(-(y @ nu0)) / xp)
    slopes.sort()
    seq = [sl for _, sl in slopes]
    convex = all(b >= a - 1e-12 for a, b in zip(seq, seq[1:]))
    max_slope = max(abs(sl) for sl in seq)
    bound = math.tan(math.acos(a_star(min(eps, 1 - 1e-15))))
    return {
        "max_slope": max_slope,
        "slope_bound": bound,
        "phi_over_x": phi_ratio,
        "convex": convex,
        "ok": bool(convex and max_slope <= bound * (1 + 1e-12) and phi_ratio <= eps),
    }


def boundary_density(body: ConvexBody, centers, radii) -> float:
    """Lower estimate of sup over (z, rho) of H^1(boundary in B_rho(z)) / rho."""
    best = 0.0
    for z in np.atleast_2d(centers):
        for rho in np.atleast_1d(radii):
            best = max(best, boundary_length_in_ball(body, z, float(rho)) / float(rho))
    return best


def good_set_distance_inequalities(x0, nu, eps: float, x, y, d_omega: float | None = None) -> dict:
    """Left-minus-right residuals of the near-orthogonality estimates.

    With x* = 2 x0 - x: the inner product bound, the two squared-distance
    expansions, and the d(x) <= |x - x0| <= d(x) / sqrt(1 - 2 eps) sandwich.
    Every residual is <= 0 on a certified configuration.
    """
    x0, x, y = (np.asarray(a, dtype=float) for a in (x0, x, y))
    a, b = x - x0, y - x0
    na2, nb2 = float(a @ a), float(b @ b)
    na, nb = math.sqrt(na2), math.sqrt(nb2)
    xs = 2 * x0 - x
    out = {
        "inner": abs(float(a @ b)) - 2 * eps * na * nb,
        "expand": abs(float((x - y) @ (x - y)) - na2 - nb2) - 2 * eps * (na2 + nb2),
        "expand_star": abs(float((xs - y) @ (xs - y)) - na2 - nb2) - 2 * eps * (na2 + nb2),
    }
    if d_omega is not None:
        out["sandwich_low"] = d_omega - na
        out["sandwich_high"] = na - d_omega / math.sqrt(1 - 2 * eps) if eps < 0.5 else -math.inf
    return out


def good_set_report(body: ConvexBody, eps: float, r: float, s_values, n: int = 200_000, seed: int = 0, p: float = 1.0) -> GoodSetReport:
    g = good_boundary_set(body, eps, r)
    bad = [bad_set_volume(body, eps, r, s, n=n, seed=seed + k) for k, s in enumerate(s_values)]
    lo, hi = body.bounding_box()
    rng = np.random.default_rng(seed)
    X = lo + (hi - lo) * rng.random((n, len(lo)))
    d = distance_to_complement(body, X)
    near = (d > 0) & (d < r / 2)
    foot = sawtooth_mask(body, X[near], eps, r)
    exact = sawtooth_mask_exact(body, X[near], eps, r)
    bias = float(np.count_nonzero(exact & ~foot)) / max(1, int(near.sum()))
    nus = []
    for p0, q0 in g.segments:
        mid = 0.5 * (p0 + q0)
        nus.append(nu_bar_p(body, mid, r, p).value)
    return GoodSetReport(eps, r, g.measure, body.metrics.surface, bad, bias, nus)
