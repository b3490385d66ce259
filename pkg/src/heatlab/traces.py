"""Neumann heat traces of boxes, two-term remainders and their comparators.

For a box the trace factorises into one-dimensional theta sums. Using the
Poisson-transformed form sqrt(4 pi t) theta(L, t) = L + sqrt(pi t) + 2 L S
with S = sum_{m>=1} exp(-m^2 L^2 / t), the remainder

    R(t) = (4 pi t)^{d/2} Tr - |box| - sqrt(pi t)/2 * surface

expands into a polynomial in sqrt(pi t) whose coefficients are symmetric
functions of the dressed lengths L(1 + 2S). Evaluating that expansion
directly keeps R(t) free of cancellation at small t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedVariant
from .geometry import Box, ConvexBody
from .numerics import fit_power_law

__all__ = [
    "TraceValue",
    "RemainderRecord",
    "theta_1d",
    "heat_trace",
    "trace_remainder",
    "thm12_rhs",
    "prop22_rhs",
    "prop23_rhs",
    "kroger_check",
    "fit_power_law",
    "neumann_box_eigenvalues",
]

TRACE_TOL = 1e-13


@dataclass(frozen=True)
class TraceValue:
    t: float
    value: float
    tail_bound: float
    direct: float | None = None
    poisson: float | None = None


@dataclass(frozen=True)
class RemainderRecord:
    t: float
    trace: float
    remainder: float
    rhs_thm12: float
    rhs_prop22: float
    rhs_prop23: float
    ratio_thm12: float
    ratio_prop22: float
    ratio_prop23: float
    kroger_margin: float


def _gauss_tail(a: float, start: int) -> float:
    # sum_{k >= start} e^{-a k^2}, bounded by a geometric series
    if start < 0:
        start = 0
    return math.exp(-a * start * start) / (-math.expm1(-a * (2 * start + 1)))


def _direct_sum(L: float, t: float, tol: float) -> tuple[float, float]:
    a = t * math.pi**2 / (L * L)
    # the partial sum is >= 1, so stop once exp(-a n^2) < 1e-16 and the tail is below tol
    n = max(1, math.ceil(math.sqrt(math.log(1e16) / a)))
    while _gauss_tail(a, n + 1) >= tol:
        n += 1
    k = np.arange(n + 1, dtype=float)
    return math.fsum(np.exp(-a * k * k)), _gauss_tail(a, n + 1)


def _poisson_s(L: float, t: float, tol: float) -> tuple[float, float]:
    """S = sum_{m>=1} exp(-m^2 L^2 / t) with a certified tail."""
    a = L * L / t
    terms = []
    m = 1
    while True:
        term = math.exp(-a * m * m)
        terms.append(term)
        if _gauss_tail(a, m + 1) < tol * 1e-3 or term == 0.0:
            break
        m += 1
    return math.fsum(terms), _gauss_tail(a, m + 1)


def theta_1d(L: float, t: float, tol: float = TRACE_TOL) -> TraceValue:
    """sum_{n>=0} exp(-t pi^2 n^2 / L^2) in direct and Poisson-summed form.

    ``value`` takes whichever form converges faster; both are returned.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    direct, dtail = _direct_sum(L, t, tol)
    S, stail = _poisson_s(L, t, tol)
    pref = L / math.sqrt(math.pi * t)
    poisson = 0.5 + 0.5 * pref + pref * S
    ptail = pref * stail
    if t * math.pi**2 / (L * L) >= L * L / t:
        return TraceValue(t, direct, dtail, direct, poisson)
    return TraceValue(t, poisson, ptail, direct, poisson)


def _box_lengths(body: ConvexBody) -> np.ndarray:
    if not isinstance(body, Box):
        raise UnsupportedVariant("exact heat traces are available for boxes only")
    return np.asarray(body.lengths, dtype=float)


def heat_trace(body: ConvexBody, t: float) -> TraceValue:
    """Tr exp(t Laplacian) for a box, as a product of 1-D thetas."""
    Ls = _box_lengths(body)
    parts = [theta_1d(L, t) for L in Ls]
    vals = np.array([p.value for p in parts])
    tails = np.array([p.tail_bound for p in parts])
    value = float(np.prod(vals))
    tail = float(np.prod(vals + tails) - value)
    return TraceValue(t, value, tail)


def _esym(L) -> np.ndarray:
    e = np.zeros(len(L) + 1)
    e[0] = 1.0
    for l in L:
        e[1:] = e[1:] + l * e[:-1]
    return e


def _remainder_terms(Ls: np.ndarray, t: float) -> tuple[float, float, float]:
    """Return (R(t), Kroger margin, trace) without cancellation."""
    d = len(Ls)
    u = math.sqrt(math.pi * t)
    S = np.array([_poisson_s(L, t, TRACE_TOL)[0] for L in Ls])
    dressed = Ls * (1 + 2 * S)
    e_dr = _esym(dressed)
    # e_k(L(1+2S)) - e_k(L) expanded over nonempty subsets that pick a 2LS factor
    delta = _esym_difference(Ls, 2 * Ls * S)
    # prod_i (dressed_i + u) = sum_k u^k e_{d-k}(dressed)
    high = math.fsum(u**k * e_dr[d - k] for k in range(2, d + 1))
    R = high + u * delta[d - 1] + delta[d]
    margin = R + u * _esym(Ls)[d - 1]
    trace = math.fsum(u**k * e_dr[d - k] for k in range(d + 1)) / (4 * math.pi * t) ** (d / 2)
    return R, margin, trace


def _esym_difference(L: np.ndarray, add: np.ndarray) -> np.ndarray:
    """e_k(L + add) - e_k(L) for all k, accumulated only from terms with an ``add`` factor."""
    base = np.zeros(len(L) + 1)
    diff = np.zeros(len(L) + 1)
    base[0] = 1.0
    for l, a in zip(L, add):
        new_diff = diff.copy()
        new_diff[1:] += (l + a) * diff[:-1] + a * base[:-1]
        new_base = base.copy()
        new_base[1:] += l * base[:-1]
        base, diff = new_base, new_diff
    return diff


def thm12_rhs(body: ConvexBody, t: float, eps: float) -> float:
    """surface * sqrt(t) * [(sqrt t / r_in)^{1/2 - eps} + (sqrt t / r_in)^{d-1}]."""
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    m = body.metrics
    q = math.sqrt(t) / m.inradius
    return m.surface * math.sqrt(t) * (q ** (0.5 - eps) + q ** (m.dim - 1))


def prop22_rhs(body: ConvexBody, t: float) -> float:
    """Log-corrected small-time comparator; defined for t < r_in^2."""
    m = body.metrics
    if t >= m.inradius**2:
        return math.nan
    q = math.sqrt(t) / m.inradius
    return m.surface * math.sqrt(t) * math.sqrt(q) * math.sqrt(math.log(m.inradius**2 / t))


def prop23_rhs(body: ConvexBody, t: float) -> float:
    """surface * sqrt(t) * (sqrt t / r_in)^{d-1}."""
    m = body.metrics
    return m.surface * math.sqrt(t) * (math.sqrt(t) / m.inradius) ** (m.dim - 1)


def trace_remainder(body: ConvexBody, t: float, eps: float = 0.25) -> RemainderRecord:
    Ls = _box_lengths(body)
    if t <= 0:
        raise ValueError("t must be positive")
    R, margin, trace = _remainder_terms(Ls, t)
    r12 = thm12_rhs(body, t, eps)
    r22 = prop22_rhs(body, t)
    r23 = prop23_rhs(body, t)
    return RemainderRecord(
        t=t,
        trace=trace,
        remainder=R,
        rhs_thm12=r12,
        rhs_prop22=r22,
        rhs_prop23=r23,
        ratio_thm12=abs(R) / r12,
        ratio_prop22=abs(R) / r22 if math.isfinite(r22) and r22 > 0 else math.nan,
        ratio_prop23=abs(R) / r23,
        kroger_margin=margin,
    )


def kroger_check(body: ConvexBody, t: float, tol: float = 1e-12) -> tuple[bool, float]:
    """(4 pi t)^{d/2} Tr - |body| >= 0; returns (holds, margin)."""
    _, margin, _ = _remainder_terms(_box_lengths(body), t)
    return margin >= -tol, margin


def neumann_box_eigenvalues(lengths, n_max: int) -> np.ndarray:
    """Sorted eigenvalues sum_i (pi k_i / L_i)^2 with 0 <= k_i <= n_max."""
    grids = np.meshgrid(*[(np.arange(n_max + 1) * math.pi / L) ** 2 for L in lengths], indexing="ij")
    return np.sort(np.sum(grids, axis=0).ravel())
