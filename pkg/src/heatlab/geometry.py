"""Exact convex geometry on planar polygons, axis-aligned boxes and balls.

Polygons are stored as CCW vertex arrays; every bounding edge carries a
half-plane ``n . x < offset`` with ``n`` the outward unit normal. Distances,
erosions (inner parallel bodies), boundary strips and local volumes are all
computed exactly up to floating-point rounding.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import Degenerate, LevelEmpty, NonConvex, UnsupportedVariant

__all__ = [
    "Polygon",
    "Box",
    "Ball",
    "ConvexBody",
    "BodyMetrics",
    "HalfPlane",
    "unit_ball_volume",
    "body_from_dict",
    "body_to_dict",
    "validate",
    "halfplanes",
    "distance_to_complement",
    "inner_parallel_body",
    "boundary_neighborhood_volume",
    "inner_level_perimeter",
    "theta_omega",
    "local_volume",
    "local_volume_mc",
    "minkowski_volume",
    "random_convex_polygon",
    "polygon_area",
    "polygon_perimeter",
    "clip_halfplane",
]

_VERTEX_TOL = 1e-12


def unit_ball_volume(d: int) -> float:
    """Lebesgue measure of the unit ball in R^d."""
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def polygon_area(v: np.ndarray) -> float:
    if len(v) < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def polygon_perimeter(v: np.ndarray) -> float:
    if len(v) < 2:
        return 0.0
    return float(np.sum(np.hypot(*(np.roll(v, -1, axis=0) - v).T)))


@dataclass(frozen=True)
class HalfPlane:
    normal: np.ndarray
    offset: float

    def slack(self, x: np.ndarray) -> np.ndarray:
        """``offset - n . x``; positive inside."""
        return self.offset - np.asarray(x) @ self.normal


@dataclass(frozen=True)
class BodyMetrics:
    volume: float
    surface: float
    inradius: float
    incenter: np.ndarray
    dim: int


@dataclass(frozen=True, eq=False)
class Polygon:
    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise Degenerate("polygon vertices must be an (m, 2) array")
        if len(v) < 3:
            raise Degenerate(f"polygon needs at least 3 vertices, got {len(v)}")
        e = np.roll(v, -1, axis=0) - v
        if np.any(np.hypot(e[:, 0], e[:, 1]) == 0.0):
            raise Degenerate("repeated consecutive vertices")
        cross = e[:, 0] * np.roll(e[:, 1], -1) - e[:, 1] * np.roll(e[:, 0], -1)
        if np.any(cross <= 0):
            i = int(np.argmin(cross))
            raise NonConvex(f"turn at vertex {(i + 1) % len(v)} has cross product {cross[i]:.3g} <= 0")
        if polygon_area(v) <= 0:
            raise Degenerate("zero area")
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    @classmethod
    def _trusted(cls, vertices: np.ndarray) -> "Polygon":
        # eroded polygons near r_in can be slivers; skip the strict checks
        obj = object.__new__(cls)
        v = np.array(vertices, dtype=float)
        v.flags.writeable = False
        object.__setattr__(obj, "vertices", v)
        return obj

    @property
    def dim(self) -> int:
        return 2

    @cached_property
    def edge_normals(self) -> np.ndarray:
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        n = np.column_stack([e[:, 1], -e[:, 0]])
        return n / np.hypot(n[:, 0], n[:, 1])[:, None]

    @cached_property
    def edge_offsets(self) -> np.ndarray:
        return np.einsum("ij,ij->i", self.edge_normals, self.vertices)

    @cached_property
    def metrics(self) -> BodyMetrics:
        r, c = _polygon_inradius(self.edge_normals, self.edge_offsets)
        return BodyMetrics(polygon_area(self.vertices), polygon_perimeter(self.vertices), r, c, 2)

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    def contains(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.all(x @ self.edge_normals.T < self.edge_offsets, axis=-1)


@dataclass(frozen=True, eq=False)
class Box:
    """Axis-aligned box ``origin + prod [0, L_i]``."""

    lengths: Sequence[float]
    origin: Sequence[float] | None = field(default=None)

    def __post_init__(self):
        L = np.array(self.lengths, dtype=float).reshape(-1)
        if L.size == 0 or np.any(~np.isfinite(L)) or np.any(L <= 0):
            raise Degenerate(f"box lengths must be positive, got {L.tolist()}")
        o = np.zeros_like(L) if self.origin is None else np.array(self.origin, dtype=float).reshape(-1)
        if o.shape != L.shape:
            raise Degenerate("origin and lengths differ in dimension")
        L.flags.writeable = False
        o.flags.writeable = False
        object.__setattr__(self, "lengths", L)
        object.__setattr__(self, "origin", o)

    @property
    def dim(self) -> int:
        return len(self.lengths)

    @cached_property
    def metrics(self) -> BodyMetrics:
        L = self.lengths
        vol = float(np.prod(L))
        surf = 2.0 * sum(float(np.prod(np.delete(L, i))) for i in range(len(L)))
        return BodyMetrics(vol, surf, float(L.min()) / 2, self.origin + L / 2, self.dim)

    def bounding_box(self):
        return self.origin.copy(), self.origin + self.lengths

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        return np.all((x > self.origin) & (x < self.origin + self.lengths), axis=-1)

    def as_polygon(self) -> Polygon:
        if self.dim != 2:
            raise UnsupportedVariant("only 2-D boxes convert to polygons")
        (x0, y0), (a, b) = self.origin, self.lengths
        return Polygon([[x0, y0], [x0 + a, y0], [x0 + a, y0 + b], [x0, y0 + b]])


@dataclass(frozen=True, eq=False)
class Ball:
    center: Sequence[float]
    radius: float

    def __post_init__(self):
        c = np.array(self.center, dtype=float).reshape(-1)
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise Degenerate(f"ball radius must be positive, got {self.radius}")
        c.flags.writeable = False
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self) -> int:
        return len(self.center)

    @cached_property
    def metrics(self) -> BodyMetrics:
        d, R = self.dim, self.radius
        w = unit_ball_volume(d)
        return BodyMetrics(w * R**d, d * w * R ** (d - 1), R, self.center.copy(), d)

    def bounding_box(self):
        return self.center - self.radius, self.center + self.radius

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        return np.sum((x - self.center) ** 2, axis=-1) < self.radius**2


ConvexBody = Polygon | Box | Ball


def body_from_dict(spec: dict) -> ConvexBody:
    kind = spec.get("type")
    if kind == "polygon":
        return Polygon(spec["vertices"])
    if kind == "box":
        return Box(spec["lengths"], spec.get("origin"))
    if kind == "ball":
        return Ball(spec["center"], spec["radius"])
    raise UnsupportedVariant(f"unknown body type {kind!r}")


def body_to_dict(body: ConvexBody) -> dict:
    if isinstance(body, Polygon):
        return {"type": "polygon", "vertices": body.vertices.tolist()}
    if isinstance(body, Box):
        out = {"type": "box", "lengths": body.lengths.tolist()}
        if np.any(body.origin != 0):
            out["origin"] = body.origin.tolist()
        return out
    return {"type": "ball", "center": body.center.tolist(), "radius": body.radius}


def validate(body: ConvexBody | dict) -> BodyMetrics:
    """Check the body's invariants and return its exact metrics.

    Accepts either a constructed body or its JSON description; construction
    raises ``NonConvex`` / ``Degenerate`` on bad input.
    """
    if isinstance(body, dict):
        body = body_from_dict(body)
    return body.metrics


def _polygon_inradius(normals: np.ndarray, offsets: np.ndarray) -> tuple[float, np.ndarray]:
    # Chebyshev centre: every LP vertex is fixed by three active edges.
    m = len(normals)
    combos = np.array(list(itertools.combinations(range(m), 3)))
    rs, cs = [], []
    for chunk in np.array_split(combos, max(1, len(combos) // 20000)):
        A = np.concatenate([normals[chunk], np.ones(chunk.shape + (1,))], axis=2)
        b = offsets[chunk]
        ok = np.abs(np.linalg.det(A)) > 1e-14
        if not np.any(ok):
            continue
        sol = np.linalg.solve(A[ok], b[ok][..., None])[..., 0]
        c, r = sol[:, :2], sol[:, 2]
        slack = offsets[None, :] - c @ normals.T
        feas = np.all(slack >= r[:, None] - 1e-12 * (1 + np.abs(r[:, None])), axis=1) & (r > 0)
        rs.append(r[feas])
        cs.append(c[feas])
    r = np.concatenate(rs) if rs else np.empty(0)
    if r.size == 0:
        raise Degenerate("no feasible inscribed disk")
    c = np.concatenate(cs)
    rmax = r.max()
    tied = c[r >= rmax - 1e-12 * (1 + rmax)]
    return float(rmax), tied[np.lexsort((tied[:, 1], tied[:, 0]))[0]].copy()


def halfplanes(body: Polygon | Box) -> list[HalfPlane]:
    if isinstance(body, Polygon):
        return [HalfPlane(n, float(b)) for n, b in zip(body.edge_normals, body.edge_offsets)]
    if isinstance(body, Box):
        out = []
        for i in range(body.dim):
            e = np.zeros(body.dim)
            e[i] = 1.0
            out.append(HalfPlane(-e, -float(body.origin[i])))
            out.append(HalfPlane(e, float(body.origin[i] + body.lengths[i])))
        return out
    raise UnsupportedVariant("balls have no finite H-representation")


def distance_to_complement(body: ConvexBody, x) -> np.ndarray | float:
    """dist(x, complement of body); zero outside. Vectorised over leading axes."""
    x = np.asarray(x, dtype=float)
    if isinstance(body, Ball):
        d = body.radius - np.sqrt(np.sum((x - body.center) ** 2, axis=-1))
    elif isinstance(body, Box):
        lo = x - body.origin
        hi = body.origin + body.lengths - x
        d = np.minimum(lo.min(axis=-1), hi.min(axis=-1))
    else:
        d = (body.edge_offsets - x @ body.edge_normals.T).min(axis=-1)
    d = np.maximum(d, 0.0)
    return float(d) if np.ndim(d) == 0 else d


def clip_halfplane(v: np.ndarray, n: np.ndarray, c: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex vertex list to ``n . x <= c``."""
    if len(v) == 0:
        return v
    s = v @ n - c
    out = []
    m = len(v)
    for i in range(m):
        j = (i + 1) % m
        si, sj = s[i], s[j]
        if si <= 0:
            out.append(v[i])
        if (si < 0 < sj) or (sj < 0 < si):
            tau = si / (si - sj)
            out.append(v[i] + tau * (v[j] - v[i]))
    return np.array(out).reshape(-1, 2)


def _dedupe(v: np.ndarray, scale: float) -> np.ndarray:
    if len(v) < 2:
        return v
    keep = np.hypot(*(v - np.roll(v, -1, axis=0)).T) > _VERTEX_TOL * scale
    if not np.any(keep):
        return v[:1]
    return v[keep]


def _eroded_vertices(poly: Polygon, s: float) -> np.ndarray:
    v = poly.vertices
    for n, b in zip(poly.edge_normals, poly.edge_offsets):
        v = clip_halfplane(v, n, b - s)
        if len(v) == 0:
            break
    scale = float(np.ptp(poly.vertices, axis=0).max())
    return _dedupe(v, scale)


def inner_parallel_body(body: Polygon | Box, s: float) -> Polygon | Box | None:
    """The level set {d > s}; ``None`` stands for the empty set (s >= r_in)."""
    if isinstance(body, Ball):
        raise UnsupportedVariant("ball erosion is handled in closed form")
    if not s > 0:
        raise ValueError("erosion depth must be positive")
    if s >= body.metrics.inradius:
        return None
    if isinstance(body, Box):
        return Box(body.lengths - 2 * s, body.origin + s)
    v = _eroded_vertices(body, s)
    if len(v) < 3 or polygon_area(v) <= 0:
        return None
    return Polygon._trusted(v)


def _eroded_volume(body: ConvexBody, s: float) -> float:
    if s >= body.metrics.inradius:
        return 0.0
    if isinstance(body, Ball):
        return unit_ball_volume(body.dim) * (body.radius - s) ** body.dim
    if isinstance(body, Box):
        return float(np.prod(body.lengths - 2 * s))
    return max(polygon_area(_eroded_vertices(body, s)), 0.0)


def boundary_neighborhood_volume(body: ConvexBody, s: float) -> float:
    """|{x in body : d(x) < s}|."""
    if not s > 0:
        raise ValueError("strip width must be positive")
    return body.metrics.volume - _eroded_volume(body, s)


def inner_level_perimeter(body: ConvexBody, s: float) -> float:
    """Surface measure of the level set {d = s}, 0 <= s < r_in."""
    m = body.metrics
    if s < 0:
        raise ValueError("level must be nonnegative")
    if s >= m.inradius:
        raise LevelEmpty(f"level s={s} is at or beyond the inradius {m.inradius}")
    if s == 0:
        return m.surface
    if isinstance(body, Ball):
        d = body.dim
        return d * unit_ball_volume(d) * (body.radius - s) ** (d - 1)
    if isinstance(body, Box):
        return Box(body.lengths - 2 * s).metrics.surface
    return polygon_perimeter(_eroded_vertices(body, s))


def theta_omega(body: ConvexBody, s: float) -> float:
    """Relative defect |{d < s}| / (s * surface) - 1; lies in [-1, 0] for convex bodies."""
    return boundary_neighborhood_volume(body, s) / (s * body.metrics.surface) - 1.0


# --- local volume ------------------------------------------------------------

def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _dot(a, b):
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1]


def _segment_disk_signed_area(A: np.ndarray, B: np.ndarray, r) -> np.ndarray:
    """Signed area of (triangle O, A, B) intersected with the disk B_r(O)."""
    D = B - A
    dd = _dot(D, D)
    ad = _dot(A, D)
    disc = ad * ad - dd * (_dot(A, A) - r * r)
    sq = np.sqrt(np.maximum(disc, 0.0))
    hit = disc > 0
    t1 = np.where(hit, np.clip((-ad - sq) / dd, 0.0, 1.0), 0.0)
    t2 = np.where(hit, np.clip((-ad + sq) / dd, 0.0, 1.0), 0.0)
    P1 = A + t1[..., None] * D
    P2 = A + t2[..., None] * D

    def sector(U, V):
        return 0.5 * r * r * np.arctan2(_cross(U, V), _dot(U, V))

    return sector(A, P1) + 0.5 * _cross(P1, P2) + sector(P2, B)


def _polygon_disk_area(verts: np.ndarray, centers: np.ndarray, r) -> np.ndarray:
    total = np.zeros(centers.shape[:-1])
    m = len(verts)
    for i in range(m):
        total = total + _segment_disk_signed_area(verts[i] - centers, verts[(i + 1) % m] - centers, r)
    return total


def _lens_area(dist, R, r):
    dist = np.asarray(dist, dtype=float)
    small, big = np.minimum(R, r), np.maximum(R, r)
    out = np.where(dist <= big - small, math.pi * small**2, 0.0)
    mid = (dist > big - small) & (dist < R + r)
    dm = np.where(mid, dist, 1.0)
    a1 = r * r * np.arccos(np.clip((dm**2 + r * r - R * R) / (2 * dm * r), -1, 1))
    a2 = R * R * np.arccos(np.clip((dm**2 + R * R - r * r) / (2 * dm * R), -1, 1))
    a3 = 0.5 * np.sqrt(np.maximum((-dm + r + R) * (dm + r - R) * (dm - r + R) * (dm + r + R), 0.0))
    return np.where(mid, a1 + a2 - a3, out)


def local_volume(body: ConvexBody, x, r) -> np.ndarray | float:
    """V(x, r) = |body ∩ B_r(x)|, exact in one and two dimensions.

    ``x`` may be a stack of points (..., d). For d >= 3 the value comes from
    :func:`local_volume_mc` with its default seed; use that function directly
    when the standard error is needed.
    """
    x = np.asarray(x, dtype=float)
    d = body.dim
    if d == 1:
        lo, hi = body.bounding_box()
        xx = x[..., 0] if x.ndim and x.shape[-1] == 1 else x
        v = np.maximum(np.minimum(xx + r, hi[0]) - np.maximum(xx - r, lo[0]), 0.0)
    elif d == 2:
        if isinstance(body, Ball):
            v = _lens_area(np.sqrt(np.sum((x - body.center) ** 2, axis=-1)), body.radius, r)
        else:
            poly = body.as_polygon() if isinstance(body, Box) else body
            v = _polygon_disk_area(poly.vertices, x, r)
            v = np.clip(v, 0.0, None)
    else:
        if x.ndim > 1:
            return np.array([local_volume_mc(body, xi, r)[0] for xi in x.reshape(-1, d)]).reshape(x.shape[:-1])
        return local_volume_mc(body, x, r)[0]
    return float(v) if np.ndim(v) == 0 else v


def local_volume_mc(body: ConvexBody, x, r: float, n: int = 200_000, seed: int = 0) -> tuple[float, float]:
    """Monte Carlo V(x, r) with its standard error, sampling uniformly in B_r(x)."""
    x = np.asarray(x, dtype=float)
    d = body.dim
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, d))
    g /= np.linalg.norm(g, axis=1)[:, None]
    pts = x + r * g * rng.random(n)[:, None] ** (1.0 / d)
    p = float(np.mean(body.contains(pts)))
    vol = unit_ball_volume(d) * r**d
    return p * vol, math.sqrt(p * (1 - p) / n) * vol


def _elementary_symmetric(L: np.ndarray) -> np.ndarray:
    e = np.zeros(len(L) + 1)
    e[0] = 1.0
    for l in L:
        e[1:] = e[1:] + l * e[:-1]
    return e


def minkowski_volume(body: ConvexBody, r: float) -> float:
    """|body + B_r| via the Steiner polynomial."""
    if isinstance(body, Ball):
        return unit_ball_volume(body.dim) * (body.radius + r) ** body.dim
    if isinstance(body, Polygon):
        m = body.metrics
        return m.volume + r * m.surface + math.pi * r * r
    L = body.lengths
    d = len(L)
    e = _elementary_symmetric(L)
    # intrinsic volumes of a box are the elementary symmetric polynomials of its sides
    return float(sum(e[j] * unit_ball_volume(d - j) * r ** (d - j) for j in range(d + 1)))


def random_convex_polygon(rng: np.random.Generator, n_points: int | None = None, scale: float = 1.0) -> Polygon:
    """Convex hull of random points in an ellipse; retried until strictly convex."""
    from scipy.spatial import ConvexHull

    while True:
        k = n_points or int(rng.integers(3, 13))
        ang = rng.uniform(0, 2 * np.pi, k)
        rad = np.sqrt(rng.uniform(0.05, 1.0, k))
        aspect = rng.uniform(0.3, 1.0)
        pts = scale * np.column_stack([rad * np.cos(ang), aspect * rad * np.sin(ang)])
        try:
            hull = ConvexHull(pts)
            return Polygon(pts[hull.vertices])
        except Exception:
            continue
