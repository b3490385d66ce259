"""Exact Neumann heat kernels with certified truncation.

Free space and half-space kernels are closed forms. The interval kernel has
two representations: a lattice sum of reflected Gaussians (fast for small
t) and the cosine eigen-expansion (fast for large t). Box kernels are tensor
products of interval kernels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonpositiveTime, OutOfDomain, SeriesTooLong
from .numerics import quad

__all__ = [
    "KernelSpec",
    "KernelValue",
    "free_kernel",
    "halfspace_diag",
    "halfspace_kernel",
    "interval_kernel_images",
    "interval_kernel_spectral",
    "interval_kernel",
    "interval_diag_parts",
    "box_kernel",
    "box_kernel_diag",
    "diag_deviation",
    "g_norm_estimate",
    "weighted_box_kernel",
    "mass_integral",
    "semigroup_residual",
]

DEFAULT_TOL = 1e-14
MAX_TERMS = 10_000_000
_DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class KernelSpec:
    """Which exactly evaluable kernel to use.

    ``kind`` is one of ``"free"``, ``"halfspace"``, ``"interval"``, ``"box"``.
    """

    kind: str
    dim: int = 1
    length: float | None = None
    lengths: tuple[float, ...] | None = None
    truncation_tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.kind not in ("free", "halfspace", "interval", "box"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if not (0 < self.truncation_tol <= 1e-6):
            raise ValueError("truncation_tol must lie in (0, 1e-6]")
        if self.kind == "interval":
            if not (self.length and self.length > 0):
                raise ValueError("interval kernel needs a positive length")
            object.__setattr__(self, "dim", 1)
        if self.kind == "box":
            if not self.lengths or any(l <= 0 for l in self.lengths):
                raise ValueError("box kernel needs positive lengths")
            object.__setattr__(self, "lengths", tuple(float(l) for l in self.lengths))
            object.__setattr__(self, "dim", len(self.lengths))
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")

    @classmethod
    def interval(cls, L: float, tol: float = DEFAULT_TOL) -> "KernelSpec":
        return cls("interval", 1, length=float(L), truncation_tol=tol)

    @classmethod
    def box(cls, lengths: Sequence[float], tol: float = DEFAULT_TOL) -> "KernelSpec":
        return cls("box", len(lengths), lengths=tuple(lengths), truncation_tol=tol)

    @classmethod
    def free(cls, d: int) -> "KernelSpec":
        return cls("free", d)

    @property
    def box_lengths(self) -> tuple[float, ...]:
        return (self.length,) if self.kind == "interval" else self.lengths

    def __call__(self, t, x, y) -> "KernelValue":
        if self.kind == "free":
            return free_kernel(t, x, y, self.dim)
        if self.kind == "halfspace":
            return halfspace_kernel(t, x, y, self.dim)
        if self.kind == "interval":
            return interval_kernel(self.length, t, x, y, self.truncation_tol)
        return box_kernel(self.lengths, t, x, y, self.truncation_tol)


@dataclass(frozen=True)
class KernelValue:
    value: np.ndarray | float
    tail_bound: float

    def __float__(self):
        return float(self.value)


def _check_time(t):
    if np.any(np.asarray(t) <= 0):
        raise NonpositiveTime(f"time must be positive, got {t}")


def free_kernel(t, x, y, d: int | None = None) -> KernelValue:
    """(4 pi t)^{-d/2} exp(-|x-y|^2 / 4t); x, y broadcast over leading axes."""
    _check_time(t)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if d is None:
        d = x.shape[-1] if x.ndim else 1
    if d == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        r2 = (x - y) ** 2
    else:
        r2 = np.sum((x - y) ** 2, axis=-1)
    v = (4 * math.pi * t) ** (-d / 2) * np.exp(-r2 / (4 * t))
    return KernelValue(float(v) if np.ndim(v) == 0 else v, 0.0)


def halfspace_diag(t, h, d: int) -> KernelValue:
    """Diagonal of the Neumann kernel of {x_d > 0} at height h."""
    _check_time(t)
    h = np.asarray(h, dtype=float)
    v = (4 * math.pi * t) ** (-d / 2) * (1 + np.exp(-h * h / t))
    return KernelValue(float(v) if np.ndim(v) == 0 else v, 0.0)


def halfspace_kernel(t, x, y, d: int) -> KernelValue:
    """Free kernel plus its reflection through {x_d = 0}."""
    y = np.array(y, dtype=float)
    ty = y.copy()
    ty[..., -1] *= -1
    a = free_kernel(t, x, y, d).value
    b = free_kernel(t, x, ty, d).value
    return KernelValue(a + b, 0.0)


# --- interval ----------------------------------------------------------------

def _image_truncation(L: float, t: float, tol: float) -> tuple[int, float]:
    # omitted images with |n| = k+1 sit at distance >= 2kL; four of them per k
    a = L * L / t
    pref = 4.0 / math.sqrt(4 * math.pi * t)
    N = 1
    while True:
        bound = pref * math.exp(-N * N * a) / (1 - math.exp(-(2 * N + 1) * a))
        if bound <= tol:
            return N, bound
        N += 1
        if N > MAX_TERMS:
            raise SeriesTooLong(f"image sum needs more than {MAX_TERMS} terms")


def _spectral_truncation(L: float, t: float, tol: float) -> tuple[int, float]:
    b = t * math.pi**2 / (L * L)
    # smallest N with (2/L) e^{-b(N+1)^2} / (1 - e^{-b(2N+3)}) <= tol
    need = math.log(2 / (L * tol) + 1) / b
    N = max(0, int(math.ceil(math.sqrt(need))) - 1)
    if N > MAX_TERMS:
        raise SeriesTooLong(f"cosine series needs {N} > {MAX_TERMS} terms; use the image sum")
    while True:
        bound = (2 / L) * math.exp(-b * (N + 1) ** 2) / (-math.expm1(-b * (2 * N + 3)))
        if bound <= tol:
            return N, bound
        N += 1


def _check_interval(L, x, y):
    for z in (x, y):
        z = np.asarray(z)
        if np.any(z < -_DOMAIN_SLACK) or np.any(z > L + _DOMAIN_SLACK):
            raise OutOfDomain(f"points must lie in [0, {L}]")


def _images(L, t, x, y, N, log_weight=0.0):
    n = np.arange(-N, N + 1).reshape((-1,) + (1,) * max(np.ndim(x), np.ndim(y)))
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    e1 = np.exp(log_weight - (x - y - 2 * n * L) ** 2 / (4 * t))
    e2 = np.exp(log_weight - (x + y - 2 * n * L) ** 2 / (4 * t))
    return (e1 + e2).sum(axis=0) / math.sqrt(4 * math.pi * t)


def interval_kernel_images(L: float, t: float, x, y, tol: float = DEFAULT_TOL) -> KernelValue:
    """Neumann kernel of [0, L] as a sum of reflected free kernels."""
    _check_time(t)
    _check_interval(L, x, y)
    N, tail = _image_truncation(L, t, tol)
    v = _images(L, t, x, y, N)
    return KernelValue(float(v) if np.ndim(v) == 0 else v, tail)


def interval_kernel_spectral(L: float, t: float, x, y, tol: float = DEFAULT_TOL) -> KernelValue:
    """Neumann kernel of [0, L] from its cosine eigenfunctions."""
    _check_time(t)
    N, tail = _spectral_truncation(L, t, tol)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = np.arange(1, N + 1).reshape((-1,) + (1,) * max(x.ndim, y.ndim))
    w = np.exp(-t * (n * math.pi / L) ** 2)
    s = (np.cos(n * math.pi * x / L) * np.cos(n * math.pi * y / L) * w).sum(axis=0)
    v = 1 / L + (2 / L) * s
    return KernelValue(float(v) if np.ndim(v) == 0 else v, tail)


def interval_kernel(L: float, t: float, x, y, tol: float = DEFAULT_TOL) -> KernelValue:
    """Regime-split interval kernel: images for t <= L^2/4, cosines above."""
    if t <= L * L / 4:
        return interval_kernel_images(L, t, x, y, tol)
    _check_interval(L, x, y)
    return interval_kernel_spectral(L, t, x, y, tol)


def interval_diag_parts(L: float, t: float, x, tol: float = DEFAULT_TOL):
    """Split sqrt(4 pi t) k(t, x, x) into ``1 + wall + rest``.

    ``wall`` is the reflection in the nearest endpoint, exp(-m^2/t) with
    m = min(x, L - x); ``rest`` collects the remaining images. Returning the
    pieces separately lets callers form deviations from the free and
    half-space diagonals without cancellation.
    """
    _check_time(t)
    x = np.asarray(x, dtype=float)
    _check_interval(L, x, x)
    m = np.minimum(x, L - x)
    wall = np.exp(-m * m / t)
    if t <= L * L / 4:
        N, tail = _image_truncation(L, t, tol)
        n = np.arange(1, N + 1).reshape((-1,) + (1,) * x.ndim)
        direct = 2 * np.exp(-(n * L) ** 2 / t).sum(axis=0)
        far = np.exp(-(L - m) ** 2 / t)
        # reflections at x - nL for n not in {0, 1}
        nn = np.concatenate([np.arange(-N, 0), np.arange(2, N + 1)]).reshape((-1,) + (1,) * x.ndim)
        refl = np.exp(-(x - nn * L) ** 2 / t).sum(axis=0)
        rest = direct + far + refl
    else:
        kv = interval_kernel_spectral(L, t, x, x, tol)
        tail = kv.tail_bound
        rest = math.sqrt(4 * math.pi * t) * kv.value - 1 - wall
    scaled_tail = tail * math.sqrt(4 * math.pi * t)
    return wall, rest, scaled_tail


# --- boxes -------------------------------------------------------------------

def _combine_tails(values, tails):
    vals = [np.abs(np.asarray(v)) for v in values]
    hi = np.prod([v + e for v, e in zip(vals, tails)], axis=0)
    lo = np.prod(vals, axis=0)
    return float(np.max(hi - lo))


def box_kernel(lengths: Sequence[float], t: float, x, y, tol: float = DEFAULT_TOL) -> KernelValue:
    """Neumann kernel of prod [0, L_i]; x, y have shape (..., d)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    vals, tails = [], []
    for i, L in enumerate(lengths):
        kv = interval_kernel(L, t, x[..., i], y[..., i], tol)
        vals.append(kv.value)
        tails.append(kv.tail_bound)
    v = np.prod(vals, axis=0)
    return KernelValue(float(v) if np.ndim(v) == 0 else v, _combine_tails(vals, tails))


def box_kernel_diag(lengths: Sequence[float], t: float, x, tol: float = DEFAULT_TOL) -> KernelValue:
    return box_kernel(lengths, t, x, x, tol)


def diag_deviation(lengths: Sequence[float], t: float, x, reference: str = "free", tol: float = DEFAULT_TOL):
    """Cancellation-free (4 pi t)^{d/2} k(t,x,x) minus a model diagonal.

    ``reference="free"`` subtracts 1; ``reference="halfspace"`` subtracts
    1 + exp(-d(x)^2/t) with d(x) the distance to the nearest face. Returns
    ``(deviation, tail_bound)``.
    """
    x = np.asarray(x, dtype=float)
    parts = [interval_diag_parts(L, t, x[..., i], tol) for i, L in enumerate(lengths)]
    a = [w + r for w, r, _ in parts]
    tails = [e for _, _, e in parts]
    tail = _combine_tails([1 + ai for ai in a], tails)
    logs = np.array([np.log1p(ai) for ai in a])
    if reference == "free":
        return np.expm1(logs.sum(axis=0)), tail
    if reference != "halfspace":
        raise ValueError(f"unknown reference {reference!r}")
    d = len(lengths)
    L = np.asarray(lengths, dtype=float)
    m = np.minimum(x, L - x)
    star = np.argmin(m, axis=-1)
    walls = np.array([w for w, _, _ in parts])
    rests = np.array([r for _, r, _ in parts])
    idx = np.arange(d).reshape((-1,) + (1,) * (logs.ndim - 1))
    others = np.where(idx == star, 0.0, logs).sum(axis=0)
    a_star = np.take_along_axis(np.array(a), star[None, ...], axis=0)[0] if logs.ndim > 1 else np.array(a)[star]
    rest_star = np.take_along_axis(rests, star[None, ...], axis=0)[0] if logs.ndim > 1 else rests[star]
    dev = (1 + a_star) * np.expm1(others) + rest_star
    return dev, tail


# --- weighted norm ----------------------------------------------------------

def _weighted_interval(L, s, x, y, delta, tol):
    # sqrt(s) k(s,x,y) exp((x-y)^2 / (4(1+delta)s)), weight folded into exponents
    lw = (x - y) ** 2 / (4 * (1 + delta) * s)
    if s <= L * L / 4:
        N, _ = _image_truncation(L, s, tol)
        return math.sqrt(s) * _images(L, s, x, y, N, log_weight=lw)
    return math.sqrt(s) * interval_kernel_spectral(L, s, x, y, tol).value * np.exp(lw)


def weighted_box_kernel(lengths: Sequence[float], t: float, x, y, delta: float, tol: float = DEFAULT_TOL):
    """t^{d/2} k(t,x,y) exp(|x-y|^2 / (4(1+delta)t)) for a box, without overflow.

    The Gaussian weight factorises over coordinates and is folded into each
    image exponent, so the product stays finite even when k underflows.
    """
    _check_time(t)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = 1.0
    for i, L in enumerate(lengths):
        _check_interval(L, x[..., i], y[..., i])
        out = out * _weighted_interval(L, t, x[..., i], y[..., i], delta, tol)
    return out


def _gnorm_grid(spec, delta, x, t_max, y_lo, y_hi, ns, ny, s_min_frac, ball_radius=None):
    d = spec.dim
    s_grid = np.geomspace(t_max * s_min_frac, t_max, ns)
    axes = [np.linspace(y_lo[i], y_hi[i], ny) for i in range(d)]
    mask = None
    if ball_radius is not None:
        r2 = sum(np.reshape((axes[i] - x[i]) ** 2, [-1 if j == i else 1 for j in range(d)]) for i in range(d))
        mask = r2 <= ball_radius**2 * (1 + 1e-12)
    best = 0.0
    for s in s_grid:
        if spec.kind == "free":
            facs = [(4 * math.pi) ** -0.5 * np.exp(-(axes[i] - x[i]) ** 2 / (4 * s) * (1 - 1 / (1 + delta)))
                    for i in range(d)]
        else:
            Ls = spec.box_lengths
            facs = [_weighted_interval(Ls[i], s, x[i], axes[i], delta, spec.truncation_tol) for i in range(d)]
        if mask is None:
            # separable: the sup of a product of nonnegative factors is the product of sups
            best = max(best, float(np.prod([f.max() for f in facs])))
        else:
            prod = facs[0].reshape([-1] + [1] * (d - 1))
            for i in range(1, d):
                prod = prod * facs[i].reshape([-1 if j == i else 1 for j in range(d)])
            best = max(best, float(np.max(np.where(mask, prod, 0.0))))
    return best


def g_norm_estimate(
    spec: KernelSpec,
    delta: float,
    x,
    t_max: float,
    region: tuple | None = None,
    rel_change: float = 1e-3,
    ns: int = 24,
    ny: int = 33,
    max_doublings: int = 6,
    s_min_frac: float = 1e-4,
) -> tuple[float, dict]:
    """Grid lower estimate of sup s^{d/2} k(s,x,y) exp(|x-y|^2 / 4(1+delta)s).

    The sup runs over s in (0, t_max] and y in ``region`` intersected with
    the closed domain. ``region`` is ``None`` (whole domain), an axis-aligned
    box ``("box", lo, hi)`` or a ball ``("ball", R)`` about x. The grid
    doubles until the estimate moves by less than ``rel_change``. Returns
    ``(estimate, info)`` with the final grid sizes in ``info``.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    d = spec.dim
    if spec.kind in ("interval", "box"):
        Ls = np.array(spec.box_lengths)
        lo, hi = np.zeros(d), Ls
    else:
        lo, hi = x - 10 * math.sqrt(t_max), x + 10 * math.sqrt(t_max)
    ball = None
    if region is not None:
        if region[0] == "ball":
            ball = float(region[1])
            rlo, rhi = x - ball, x + ball
        elif region[0] == "box":
            rlo, rhi = region[1], region[2]
        else:
            raise ValueError(f"unknown region {region[0]!r}")
        lo = np.maximum(lo, np.asarray(rlo, dtype=float))
        hi = np.minimum(hi, np.asarray(rhi, dtype=float))
    # the diagonal y = x always belongs to the grid
    ny = ny | 1
    prev = None
    for k in range(max_doublings + 1):
        est = _gnorm_grid(spec, delta, x, t_max, lo, hi, ns, ny, s_min_frac, ball)
        est = max(est, _gnorm_grid(spec, delta, x, t_max, x, x, ns, 1, s_min_frac))
        if prev is not None and abs(est - prev) <= rel_change * max(abs(est), 1e-300):
            return est, {"ns": ns, "ny": ny, "doublings": k, "converged": True}
        prev = est
        ns, ny = 2 * ns, 2 * ny - 1
    return est, {"ns": ns // 2, "ny": (ny + 1) // 2, "doublings": max_doublings, "converged": False}


# --- integral identities ------------------------------------------------------

def mass_integral(spec: KernelSpec, t: float, x, epsabs: float = 1e-12) -> float:
    """Integral of k(t, x, .) over the domain; equals 1 for Neumann kernels."""
    _check_time(t)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if spec.kind == "free":
        return float(np.prod([quad(lambda y, xi=xi: free_kernel(t, xi, y, 1).value, -np.inf, np.inf, epsabs=epsabs)
                              for xi in x]))
    if spec.kind == "halfspace":
        h = x[-1]
        normal = quad(lambda y: free_kernel(t, h, y, 1).value + free_kernel(t, -h, y, 1).value, 0, np.inf,
                      epsabs=epsabs, points=None)
        lateral = [quad(lambda y, xi=xi: free_kernel(t, xi, y, 1).value, -np.inf, np.inf, epsabs=epsabs)
                   for xi in x[:-1]]
        return float(normal * np.prod(lateral))
    # tensor kernel: the domain integral factorises over coordinates
    out = 1.0
    for xi, L in zip(x, spec.box_lengths):
        out *= quad(lambda y, xi=xi, L=L: interval_kernel(L, t, xi, y, spec.truncation_tol).value, 0.0, L,
                    epsabs=epsabs, points=[xi])
    return out


def semigroup_residual(L: float, t: float, s: float, x: float, y: float, epsabs: float = 1e-12) -> float:
    """|int_0^L k(t,x,z) k(s,z,y) dz - k(t+s,x,y)| on [0, L]."""
    _check_time(t)
    _check_time(s)

    def f(z):
        return interval_kernel(L, t, x, z).value * interval_kernel(L, s, z, y).value

    lhs = quad(f, 0.0, L, epsabs=epsabs, points=sorted({x, y}))
    return abs(lhs - interval_kernel(L, t + s, x, y).value)
