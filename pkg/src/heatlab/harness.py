"""Report types, the Monte Carlo volume oracle and the integral identities
shared by the verification suites."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .geometry import (
    Box,
    ConvexBody,
    Polygon,
    boundary_neighborhood_volume,
    clip_halfplane,
    distance_to_complement,
)
from .kernels import interval_kernel
from .numerics import quad, triangle_integral

__all__ = [
    "Assertion",
    "SuiteReport",
    "mc_volume",
    "layer_cake_identity_check",
    "layer_cake_sides",
    "duhamel_u",
    "duhamel_mass_check",
    "pmap",
    "dyadic_grid",
]


@dataclass
class Assertion:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    params: dict
    seed: int
    records: list = field(default_factory=list)
    assertions: list = field(default_factory=list)
    fitted: dict = field(default_factory=dict)
    wall_clock: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def check(self, name: str, value: float, tolerance: float, ok: bool | None = None, detail: str = "") -> Assertion:
        """Record ``value <= tolerance`` (or an explicit verdict ``ok``)."""
        value = float(value)
        passed = bool(value <= tolerance) if ok is None else bool(ok)
        a = Assertion(name, passed, value, float(tolerance), detail)
        self.assertions.append(a)
        return a

    def failures(self) -> list:
        return [a for a in self.assertions if not a.passed]


def dyadic_grid(k_min: int, k_max: int) -> np.ndarray:
    """t = 2^-k for k = k_min..k_max, coarsest first."""
    return np.array([2.0**-k for k in range(k_min, k_max + 1)])


def pmap(func: Callable, items, workers: int = 1) -> list:
    """Order-preserving map; ``workers > 1`` fans out to processes."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [func(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(func, items))


def mc_volume(pred: Callable, lo, hi, n: int, seed: int, chunk: int = 250_000) -> tuple[float, float]:
    """Hit-or-miss volume of {pred} inside the box [lo, hi]; returns (estimate, std error)."""
    if n < 10_000:
        raise ValueError("use at least 10^4 samples")
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    rng = np.random.default_rng(seed)
    vol = float(np.prod(hi - lo))
    hits = 0
    for k in range(0, n, chunk):
        m = min(chunk, n - k)
        X = lo + (hi - lo) * rng.random((m, len(lo)))
        hits += int(np.count_nonzero(pred(X)))
    p = hits / n
    return p * vol, math.sqrt(p * (1 - p) / n) * vol


# ---------------------------------------------------------------- layer cake


def _planar(body: ConvexBody) -> Polygon:
    if isinstance(body, Polygon):
        return body
    if isinstance(body, Box) and body.dim == 2:
        return body.as_polygon()
    raise ValueError("the layer-cake check runs on planar polygons and 2-D boxes")


def _nearest_edge_cells(poly: Polygon, r: float):
    """Convex pieces of {d < r} on which a single edge is nearest."""
    N, b = poly.edge_normals, poly.edge_offsets
    cells = []
    for i in range(len(N)):
        v = poly.vertices
        for j in range(len(N)):
            if j != i:
                v = clip_halfplane(v, N[j] - N[i], b[j] - b[i])
        v = clip_halfplane(v, -N[i], r - b[i])
        if len(v) >= 3:
            cells.append((i, v))
    return cells


def layer_cake_sides(body: ConvexBody, t: float, r: float, epsabs: float = 1e-12) -> tuple[float, float]:
    """Both sides of int_{d<r} e^{-d^2/t} = 2 int_0^{r/sqrt t} |{d < sqrt(t) s}| s e^{-s^2} ds + |{d<r}| e^{-r^2/t}.

    The left side is a 2-D adaptive quadrature of the distance function over
    the nearest-edge cells (each fan-triangulated, so the integrand is smooth
    on every piece); the right side is a 1-D quadrature of the exact
    boundary-strip volume.
    """
    poly = _planar(body)

    def f(x):
        d = distance_to_complement(poly, x)
        return math.exp(-d * d / t)

    lhs = 0.0
    for _, v in _nearest_edge_cells(poly, r):
        for k in range(1, len(v) - 1):
            lhs += triangle_integral(f, v[0], v[k], v[k + 1], epsabs=epsabs)
    st = math.sqrt(t)
    r_in = poly.metrics.inradius

    def g(s):
        return boundary_neighborhood_volume(poly, st * s) * s * math.exp(-s * s) if s > 0 else 0.0

    upper = r / st
    rhs = 2 * quad(g, 0.0, upper, epsabs=epsabs, points=[r_in / st]) + boundary_neighborhood_volume(poly, r) * math.exp(-r * r / t)
    return lhs, rhs


def layer_cake_identity_check(body: ConvexBody, t: float, r: float) -> float:
    lhs, rhs = layer_cake_sides(body, t, r)
    return abs(lhs - rhs)


# ---------------------------------------------------------------- Duhamel


def duhamel_u(L: float, t: float, x: float, epsabs: float = 1e-12) -> float:
    """u(t, x) = int_0^t [k(t-s, x, 0) + k(t-s, x, L)] ds for unit flux at both ends.

    With tau = t - s = w^2 the tau^{-1/2} singularity at the boundary
    becomes a bounded integrand.
    """

    def f(w):
        if w <= 0:
            return 0.0
        tau = w * w
        return 2 * w * (interval_kernel(L, tau, x, 0.0).value + interval_kernel(L, tau, x, L).value)

    return quad(f, 0.0, math.sqrt(t), epsabs=epsabs)


def duhamel_mass_check(L: float, t: float, epsabs: float = 1e-10) -> float:
    """|int_0^L u(t, x) dx - 2t|: unit inflow through both endpoints."""
    if not t > 0:
        raise ValueError("t must be positive")
    mass = quad(lambda x: duhamel_u(L, t, x, epsabs=epsabs * 1e-2), 0.0, L, epsabs=epsabs)
    return abs(mass - 2 * t)
