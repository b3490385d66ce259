"""Quadrature and fitting helpers with explicit failure reporting."""
from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import integrate

from .errors import NonpositiveData, QuadratureFailure

QUAD_EPSABS = 1e-10


def quad(f, a, b, epsabs=QUAD_EPSABS, epsrel=0.0, points=None, limit=400):
    """Adaptive Gauss-Kronrod integral that raises instead of degrading.

    ``points`` are interior breakpoints (ignored on infinite ranges).
    """
    kw = {}
    if points is not None and math.isfinite(a) and math.isfinite(b):
        pts = [p for p in points if a < p < b]
        if pts:
            kw["points"] = pts
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, info = integrate.quad(
            f, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1, **kw
        )[:3]
    target = max(epsabs, epsrel * abs(val))
    if not math.isfinite(val) or err > 10 * target:
        raise QuadratureFailure(f"quad on [{a}, {b}] reached error {err:.3g} > target {target:.3g}")
    return float(val)


def fit_power_law(pairs) -> tuple[float, float, float]:
    """Least squares on (log t, log value): returns slope, intercept, max residual."""
    arr = np.asarray(list(pairs), dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 3:
        raise NonpositiveData("need at least three (t, value) pairs")
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise NonpositiveData("power-law fit needs positive finite data")
    lx, ly = np.log(arr[:, 0]), np.log(arr[:, 1])
    A = np.column_stack([lx, np.ones_like(lx)])
    (slope, intercept), *_ = np.linalg.lstsq(A, ly, rcond=None)
    resid = ly - (slope * lx + intercept)
    return float(slope), float(intercept), float(np.abs(resid).max())


def dblquad(f, epsabs=QUAD_EPSABS, limit=200):
    """Nested adaptive quadrature of f(u, v) over the unit square."""

    def inner(u):
        return quad(lambda v: f(u, v), 0.0, 1.0, epsabs=epsabs, limit=limit)

    return quad(inner, 0.0, 1.0, epsabs=epsabs, limit=limit)


def triangle_integral(f, A, B, C, epsabs=QUAD_EPSABS):
    """Integral of f over triangle ABC via the collapsed-square map.

    x(u, v) = A + u (B - A) + u v (C - B) has Jacobian u |(B - A) x (C - B)|.
    """
    A, B, C = (np.asarray(p, dtype=float) for p in (A, B, C))
    e1, e2 = B - A, C - B
    jac = abs(e1[0] * e2[1] - e1[1] * e2[0])
    if jac == 0.0:
        return 0.0
    return dblquad(lambda u, v: u * jac * f(A + u * e1 + u * v * e2), epsabs=epsabs)
