"""Verification suites and their registry.

Every suite takes explicit parameters, returns a ``SuiteReport`` and is
deterministic given its arguments and seed. Points outside a statement's
regime are refused and counted in ``notes`` rather than silently used.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import optimize

from .errors import ConfigInvalid, ParamOutOfRange
from .geometry import (
    Box,
    ConvexBody,
    Polygon,
    boundary_neighborhood_volume,
    distance_to_complement,
    inner_level_perimeter,
    inner_parallel_body,
    local_volume,
    minkowski_volume,
    random_convex_polygon,
    unit_ball_volume,
)
from .good_sets import (
    C_STAR,
    _edge_frame,
    _polygon_good_intervals,
    a_star,
    a_star_residual,
    bad_set_volume,
    good_boundary_set,
    good_set_distance_inequalities,
    is_good_point,
    local_parametrization_check,
    normal_variation_check,
    nu_bar_p,
    sawtooth_mask,
    sawtooth_mask_exact,
)
from .harness import (
    SuiteReport,
    duhamel_mass_check,
    dyadic_grid,
    layer_cake_sides,
    pmap,
)
from .kernels import (
    KernelSpec,
    diag_deviation,
    g_norm_estimate,
    interval_kernel_images,
    interval_kernel_spectral,
    mass_integral,
    semigroup_residual,
    weighted_box_kernel,
)
from .numerics import fit_power_law
from .traces import _esym, heat_trace, kroger_check, trace_remainder

__all__ = [
    "SuiteDef",
    "SUITES",
    "body_label",
    "suite_kernel_crosscheck",
    "suite_conservation",
    "suite_remainder_poisson",
    "suite_thm11_scaling",
    "suite_thm12",
    "suite_prop23",
    "suite_kroger",
    "suite_thm14_bulk",
    "suite_thm16_boundary",
    "suite_prop41_bulk_refined",
    "suite_layer_cake",
    "suite_appendix_a",
    "suite_propA6",
    "suite_good_sets",
    "suite_duhamel",
    "suite_davies_li_yau",
    "sample_sawtooth",
]


def body_label(body: ConvexBody) -> str:
    if isinstance(body, Box):
        return "box(" + ",".join(f"{L:g}" for L in body.lengths) + ")"
    if isinstance(body, Polygon):
        return f"polygon[{len(body.vertices)}]"
    return f"ball(d={body.dim},r={body.radius:g})"


def _box_frame(body: Box, X):
    """Coordinates relative to the box origin, as the kernels expect."""
    return np.asarray(X, dtype=float) - body.origin


def _require_box(body, key="body"):
    if not isinstance(body, Box):
        raise ConfigInvalid(key, "this suite needs an axis-aligned box")
    return body


# ---------------------------------------------------------------- kernels


def suite_kernel_crosscheck(L_values=(1.0, 2.0, 0.5), n: int = 10, tol: float = 1e-12, max_seconds: float = 2.0) -> SuiteReport:
    rep = SuiteReport("kernel_crosscheck", {"L_values": list(L_values), "n": n}, seed=0)
    t0 = time.perf_counter()
    worst = 0.0
    for L in L_values:
        ts = np.geomspace(1e-3 * L * L, 2.0 * L * L, n)
        xs = np.linspace(0.0, L, n)
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        for t in ts:
            a = interval_kernel_images(L, t, X, Y)
            b = interval_kernel_spectral(L, t, X, Y)
            diff = np.abs(a.value - b.value)
            worst = max(worst, float(diff.max()))
            rep.records.append({
                "L": L, "t": t, "max_abs_diff": float(diff.max()),
                "tail_images": a.tail_bound, "tail_spectral": b.tail_bound,
                "min_value": float(min(a.value.min(), b.value.min())),
            })
    elapsed = time.perf_counter() - t0
    rep.check("images_vs_spectral", worst, tol)
    rep.check("positivity", -min(r["min_value"] for r in rep.records), tol, detail="round-off below zero allowed up to tol")
    rep.check("runtime_seconds", elapsed, max_seconds, detail="wall clock, not persisted to CSV")
    return rep


def suite_conservation(n_mass: int = 100, n_semigroup: int = 20, seed: int = 0, mass_tol: float = 1e-9, sg_tol: float = 1e-8) -> SuiteReport:
    rep = SuiteReport("conservation", {"n_mass": n_mass, "n_semigroup": n_semigroup}, seed=seed)
    rng = np.random.default_rng(seed)
    specs = [KernelSpec.interval(1.0), KernelSpec.interval(2.0), KernelSpec.box([1.0, 2.0]), KernelSpec.box([1.0, 1.0, 1.0])]
    worst = 0.0
    for k in range(n_mass):
        sp = specs[k % len(specs)]
        t = float(10 ** rng.uniform(-3, 0))
        x = rng.random(sp.dim) * np.array(sp.box_lengths)
        m = mass_integral(sp, t, x)
        worst = max(worst, abs(m - 1))
        rep.records.append({"kind": "mass", "spec": k % len(specs), "t": t, "s": 0.0,
                            "x": float(x[0]), "y": 0.0, "value": m, "residual": abs(m - 1)})
    rep.check("mass_conservation", worst, mass_tol)
    worst = 0.0
    for _ in range(n_semigroup):
        t, s = (float(10 ** rng.uniform(-3, np.log10(0.5))) for _ in range(2))
        x, y = rng.random(2)
        res = semigroup_residual(1.0, t, s, float(x), float(y))
        worst = max(worst, res)
        rep.records.append({"kind": "semigroup", "spec": 0, "t": t, "s": s, "x": float(x), "y": float(y),
                            "value": res, "residual": res})
    rep.check("semigroup_residual", worst, sg_tol)
    return rep


# ---------------------------------------------------------------- traces


def poisson_remainder(body: Box, t: float) -> float:
    """Two-term remainder with the exponentially small image terms dropped."""
    L = np.asarray(body.lengths, dtype=float)
    d = len(L)
    u = math.sqrt(math.pi * t)
    e = _esym(L)
    return math.fsum(u**k * e[d - k] for k in range(2, d + 1))


def suite_remainder_poisson(bodies, t_grid, tol: float = 1e-12, tol_3d: float = 1e-10, max_seconds: float = 1.0) -> SuiteReport:
    """``tol`` applies to bodies of dimension <= 2, ``tol_3d`` to higher dimensions."""
    rep = SuiteReport("remainder_poisson", {"tol": tol, "tol_3d": tol_3d}, seed=0)
    t0 = time.perf_counter()
    for body in bodies:
        _require_box(body)
        worst = 0.0
        for t in t_grid:
            rec = trace_remainder(body, float(t))
            oracle = poisson_remainder(body, float(t))
            err = abs(rec.remainder - oracle)
            worst = max(worst, err)
            rep.records.append({"body": body_label(body), "t": float(t), "R": rec.remainder, "oracle": oracle, "abs_err": err})
        rep.check(f"{body_label(body)}:remainder_vs_poisson", worst, tol if body.dim <= 2 else tol_3d)
    elapsed = time.perf_counter() - t0
    rep.check("runtime_seconds", elapsed, max_seconds, detail="wall clock, not persisted to CSV")
    return rep


def suite_thm11_scaling(bodies, t_grid, fit_k=(7, 14), expected_slope: float = 1.0, slope_tol: float = 0.01) -> SuiteReport:
    """|R(t)| = o(sqrt t): fitted exponent and strict decay of |R| / (H sqrt t)."""
    rep = SuiteReport("thm11_scaling", {"fit_k": list(fit_k)}, seed=0)
    lo, hi = 2.0 ** -fit_k[1], 2.0 ** -fit_k[0]
    for body in bodies:
        _require_box(body)
        H = body.metrics.surface
        scaled, pairs = [], []
        for t in sorted(t_grid, reverse=True):
            R = trace_remainder(body, float(t)).remainder
            q = abs(R) / (H * math.sqrt(t))
            scaled.append(q)
            if lo * (1 - 1e-12) <= t <= hi * (1 + 1e-12):
                pairs.append((t, abs(R)))
            rep.records.append({"body": body_label(body), "t": float(t), "R": R, "R_over_H_sqrt_t": q})
        slope, icpt, resid = fit_power_law(pairs)
        rep.fitted[f"{body_label(body)}:slope"] = slope
        rep.fitted[f"{body_label(body)}:intercept"] = icpt
        rep.check(f"{body_label(body)}:slope", abs(slope - expected_slope), slope_tol)
        decreasing = all(b < a for a, b in zip(scaled, scaled[1:]))
        rep.check(f"{body_label(body)}:strict_decay", 0.0 if decreasing else 1.0, 0.0, ok=decreasing)
    return rep


def suite_thm12(bodies, t_grid, eps: float = 0.25, slack: float = 0.05) -> SuiteReport:
    rep = SuiteReport("thm12", {"epsilon": eps, "slack": slack}, seed=0)
    refused = 0
    for body in bodies:
        _require_box(body)
        r_in = body.metrics.inradius
        ts = sorted((float(t) for t in t_grid), reverse=True)
        keep = [t for t in ts if math.sqrt(t) <= r_in / 4 * (1 + 1e-12)]
        refused += len(ts) - len(keep)
        ratios = []
        for t in keep:
            rec = trace_remainder(body, t, eps)
            tv = heat_trace(body, t)
            ratios.append(rec.ratio_thm12)
            rep.records.append({
                "body": body_label(body), "t": t, "trace": rec.trace, "tail": tv.tail_bound,
                "R": rec.remainder, "rhs": rec.rhs_thm12, "ratio": rec.ratio_thm12,
                "ratio_prop22": rec.ratio_prop22, "kroger_margin": rec.kroger_margin,
            })
        worst = max((b / a for a, b in zip(ratios, ratios[1:]) if a > 0), default=0.0)
        rep.fitted[f"{body_label(body)}:C"] = max(ratios) if ratios else math.nan
        rep.check(f"{body_label(body)}:ratio_nonincreasing", worst, 1 + slack,
                  detail="max ratio(t_next)/ratio(t) as t halves")
        rep.check(f"{body_label(body)}:kroger", -min(r["kroger_margin"] for r in rep.records if r["body"] == body_label(body)), 1e-12)
    if refused:
        rep.notes.append(f"refused {refused} grid points with sqrt(t) > r_in/4")
    return rep


def prop23_limit(body: Box) -> float:
    """t -> infinity limit of |R| / prop23_rhs: (4 pi)^{d/2} r_in^{d-1} / H."""
    m = body.metrics
    return (4 * math.pi) ** (m.dim / 2) * m.inradius ** (m.dim - 1) / m.surface


def suite_prop23(bodies, n: int = 30, span: float = 100.0, conv_tol: float = 1e-2) -> SuiteReport:
    """Large-time regime sqrt t in [r_in, span r_in].

    The ratio tends to ``prop23_limit``, so a finite sup over the window plus
    convergence at its far end bounds it on all of [r_in, infinity). The sup
    itself is the fitted constant; it may sit slightly above the limit.
    """
    rep = SuiteReport("prop23", {"n": n, "span": span, "conv_tol": conv_tol}, seed=0)
    for body in bodies:
        _require_box(body)
        r_in = body.metrics.inradius
        lim = prop23_limit(body)
        ratios = []
        for st in np.geomspace(r_in, span * r_in, n):
            t = float(st * st)
            rec = trace_remainder(body, t)
            ratios.append(rec.ratio_prop23)
            rep.records.append({"body": body_label(body), "t": t, "R": rec.remainder, "rhs": rec.rhs_prop23,
                                "ratio": rec.ratio_prop23, "limit": lim})
        rep.fitted[f"{body_label(body)}:sup_ratio"] = max(ratios)
        rep.fitted[f"{body_label(body)}:sup_over_ratio_at_rin"] = max(ratios) / ratios[0]
        rep.fitted[f"{body_label(body)}:sup_over_limit"] = max(ratios) / lim
        rep.check(f"{body_label(body)}:finite_sup", 0.0 if math.isfinite(max(ratios)) else math.inf, 0.0)
        rep.check(f"{body_label(body)}:converges_to_limit", abs(ratios[-1] / lim - 1), conv_tol)
    return rep


def suite_kroger(bodies, t_grid, tol: float = 1e-12) -> SuiteReport:
    rep = SuiteReport("kroger", {"tol": tol}, seed=0)
    worst = -math.inf
    for body in bodies:
        _require_box(body)
        for t in t_grid:
            ok, margin = kroger_check(body, float(t), tol)
            worst = max(worst, -margin)
            rep.records.append({"body": body_label(body), "t": float(t), "margin": margin})
    rep.check("kroger_margin", worst, tol)
    return rep


# ---------------------------------------------------------------- kernels near and far from the boundary


def _bulk_grid(body: Box, n: int) -> np.ndarray:
    axes = [np.linspace(0.0, L, n) for L in body.lengths]
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, body.dim) + body.origin


def suite_thm14_bulk(bodies, t_grid, delta: float = 0.1, eta: float = 1.0, n_x: int = 41, bound: float = 4.0) -> SuiteReport:
    """|k(t,x,x) - (4 pi t)^{-d/2}| against t^{-d/2} exp(-d^2 / ((1+delta) t)) where d >= eta sqrt t."""
    if delta <= 0:
        raise ConfigInvalid("delta", "delta must be positive")
    if eta <= 0:
        raise ConfigInvalid("eta", "eta must be positive")
    rep = SuiteReport("thm14_bulk", {"delta": delta, "eta": eta, "n_x": n_x, "bound": bound}, seed=0)
    ts = sorted((float(t) for t in t_grid), reverse=True)
    for body in bodies:
        _require_box(body)
        d_ = body.dim
        grid = _bulk_grid(body, n_x)
        dist = distance_to_complement(body, grid)
        sup, mono_worst = 0.0, 0.0
        prev = None
        fixed = dist >= eta * math.sqrt(ts[0])
        for t in ts:
            edge_pt = body.origin + body.lengths / 2
            edge_pt[0] = body.origin[0] + eta * math.sqrt(t)
            pts = np.vstack([grid, edge_pt[None, :]])
            dd = np.append(dist, eta * math.sqrt(t))
            ok = dd >= eta * math.sqrt(t) * (1 - 1e-12)
            dev, _ = diag_deviation(body.lengths, t, _box_frame(body, pts[ok]))
            # ratio = (4 pi)^{-d/2} |dev| exp(d^2 / ((1+delta) t)), in logs to avoid overflow
            with np.errstate(divide="ignore"):
                logr = np.log(np.abs(dev)) - 0.5 * d_ * math.log(4 * math.pi) + dd[ok] ** 2 / ((1 + delta) * t)
            ratio = np.exp(logr)
            sup = max(sup, float(ratio.max()))
            rep.records.append({"body": body_label(body), "t": t, "n_points": int(ok.sum()),
                                "sup_ratio": float(ratio.max()), "median_ratio": float(np.median(ratio))})
            full = np.full(len(pts), np.nan)
            full[ok] = ratio
            cur = full[: len(grid)][fixed]
            if prev is not None:
                with np.errstate(invalid="ignore"):
                    grow = np.where(prev > 0, cur / prev, 0.0)
                mono_worst = max(mono_worst, float(np.nanmax(grow)))
            prev = cur
        rep.fitted[f"{body_label(body)}:sup_ratio"] = sup
        rep.check(f"{body_label(body)}:sup_ratio", sup, bound)
        rep.check(f"{body_label(body)}:ratio_nonincreasing_in_t", mono_worst, 1 + 1e-9,
                  detail="max ratio(t/2)/ratio(t) at fixed x")
    return rep


def sample_sawtooth(body: ConvexBody, eps: float, r: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Points drawn from the cones over G_{eps,r}, kept only if the exact membership test agrees."""
    poly = body.as_polygon() if isinstance(body, Box) else body
    R = min(r / eps, body.metrics.inradius)
    iv = _polygon_good_intervals(poly, R)
    v, u, _ = _edge_frame(poly)
    live = np.flatnonzero(iv[:, 1] >= iv[:, 0])
    if len(live) == 0:
        return np.empty((0, 2))
    w = iv[live, 1] - iv[live, 0]
    prob = w / w.sum() if w.sum() > 0 else np.full(len(live), 1 / len(live))
    out = []
    total = 0
    while total < n:
        m = 2 * (n - total) + 16
        e = live[rng.choice(len(live), size=m, p=prob)]
        tau = iv[e, 0] + (iv[e, 1] - iv[e, 0]) * rng.random(m)
        x0 = v[e] + tau[:, None] * u[e]
        nu = poly.edge_normals[e]
        rho = 0.5 * r * rng.random(m)
        phi = math.asin(eps) * (2 * rng.random(m) - 1)
        direction = -np.cos(phi)[:, None] * nu + np.sin(phi)[:, None] * u[e]
        X = x0 + rho[:, None] * direction
        keep = X[sawtooth_mask_exact(body, X, eps, r)]
        out.append(keep)
        total += len(keep)
    return np.vstack(out)[:n]


def suite_thm16_boundary(body, eps: float, r: float, t_grid, C: float = 3.0, c: float = 0.125, n_samples: int = 2000, seed: int = 0) -> SuiteReport:
    """|(4 pi t)^{d/2} k(t,x,x) - 1 - e^{-d^2/t}| <= C e^{-c d^2/t} (eps + e^{-c r^2/t}) on the sawtooth region."""
    body = _require_box(body)
    if body.dim != 2:
        raise ConfigInvalid("body", "sawtooth sampling is planar")
    if not 0 < eps <= 0.25:
        raise ConfigInvalid("epsilon", f"epsilon={eps} must lie in (0, 1/4]")
    if not 0 < r <= eps * body.metrics.inradius * (1 + 1e-12):
        raise ConfigInvalid("r", f"r={r} must lie in (0, epsilon * r_in = {eps * body.metrics.inradius}]")
    ts = sorted((float(t) for t in t_grid), reverse=True)
    if any(t > r * r / 2 * (1 + 1e-12) for t in ts):
        raise ConfigInvalid("t_grid", f"every t must satisfy t <= r^2/2 = {r * r / 2}")
    rep = SuiteReport("thm16_boundary", {"epsilon": eps, "r": r, "C": C, "c": c, "n_samples": n_samples}, seed=seed)
    rng = np.random.default_rng(seed)
    X = sample_sawtooth(body, eps, r, n_samples, rng)
    foot = sawtooth_mask(body, X, eps, r)
    d = distance_to_complement(body, X)
    rep.notes.append(f"{len(X)} sawtooth samples, {int(foot.sum())} also carry a foot-point witness")
    logs_lhs = []
    worst = -math.inf
    for t in ts:
        dev, _ = diag_deviation(body.lengths, t, _box_frame(body, X), reference="halfspace")
        with np.errstate(divide="ignore"):
            log_lhs = np.log(np.abs(dev))
        log_rhs = math.log(C) - c * d * d / t + math.log(eps + math.exp(-c * r * r / t))
        excess = log_lhs - log_rhs
        worst = max(worst, float(excess.max()))
        logs_lhs.append((t, log_lhs))
        rep.records.append({"t": t, "n_points": len(X), "max_lhs": float(np.abs(dev).max()),
                            "max_log_ratio": float(excess.max()), "min_d": float(d.min()), "max_d": float(d.max())})
    # constant realised at the coarsest t with c fixed
    t_c, l_c = logs_lhs[0]
    shape = -c * d * d / t_c + math.log(eps + math.exp(-c * r * r / t_c))
    rep.fitted["C_at_coarsest_t"] = float(np.exp((l_c - shape).max()))

    def holds(cc):
        return all(
            float((ll - (math.log(C) - cc * d * d / tt + math.log(eps + math.exp(-cc * r * r / tt)))).max()) <= 0
            for tt, ll in logs_lhs
        )

    lo, hi = 0.0, 1.0
    if holds(hi):
        lo = hi
    else:
        for _ in range(50):
            mid = 0.5 * (lo + hi)
            lo, hi = (mid, hi) if holds(mid) else (lo, mid)
    rep.fitted["c_largest_valid"] = lo
    rep.check("lhs_le_rhs", math.exp(worst) if math.isfinite(worst) else 0.0, 1.0,
              detail="max LHS / RHS over samples and t")
    # flat faces: the normal oscillation entering the near-boundary estimate vanishes
    poly = body.as_polygon()
    seg = good_boundary_set(body, eps, r)
    osc = [nu_bar_p(poly, 0.5 * (p + q), r).value for p, q in seg.segments] or [0.0]
    rep.fitted["max_nu_bar_on_G"] = max(osc)
    return rep


def suite_prop41_bulk_refined(body, t_grid, delta: float = 0.1, delta_prime: float = 0.2, x=None, R=None, growth: float = 1.5) -> SuiteReport:
    """``R`` is a radius or a list of radii; the default is d(x)."""
    body = _require_box(body)
    if not delta_prime > delta > 0:
        raise ConfigInvalid("delta_prime", "need delta_prime > delta > 0")
    x = body.metrics.incenter if x is None else np.asarray(x, dtype=float)
    dx = float(distance_to_complement(body, x))
    radii = [dx] if R is None else [float(v) for v in np.atleast_1d(R)]
    for Rv in radii:
        if not 0 < Rv <= dx * (1 + 1e-12):
            raise ConfigInvalid("R", f"R={Rv} must lie in (0, d(x) = {dx}]")
    rep = SuiteReport("prop41_bulk_refined", {"delta": delta, "delta_prime": delta_prime, "R": radii}, seed=0)
    spec = KernelSpec.box(list(body.lengths))
    xl = _box_frame(body, x)
    kappa = 0 if body.dim >= 3 else 1
    ts = sorted((float(t) for t in t_grid), reverse=True)
    devs = {t: abs(float(diag_deviation(body.lengths, t, xl)[0])) for t in ts}
    for Rv in radii:
        ratios, needed = [], []
        for t in ts:
            g, info = g_norm_estimate(spec, delta, xl, t, region=("ball", Rv))
            logp = max(0.0, math.log(math.sqrt(t) / Rv))
            rhs0 = g * math.exp(-Rv * Rv / ((1 + delta_prime) * t))
            rhs1 = (1 + logp) * rhs0
            ratio = devs[t] / (rhs1 if kappa else rhs0)
            ratios.append(ratio)
            needed.append(devs[t] / rhs0)
            rep.records.append({"radius": Rv, "t": t, "lhs": devs[t], "g_norm": g, "rhs_kappa0": rhs0, "rhs_kappa1": rhs1,
                                "ratio": ratio, "grid_ns": info["ns"], "grid_ny": info["ny"]})
        finite = all(math.isfinite(q) for q in ratios)
        rep.check(f"R={Rv:g}:ratios_finite", 0.0 if finite else 1.0, 0.0, ok=finite)
        worst = max((b / a for a, b in zip(ratios, ratios[1:]) if a > 0), default=0.0)
        rep.check(f"R={Rv:g}:ratio_stability", worst, growth, detail="max ratio(t/2)/ratio(t)")
        rep.fitted[f"R={Rv:g}:sup_ratio"] = max(ratios)
        rep.fitted[f"R={Rv:g}:sup_ratio_kappa0"] = max(needed)
    return rep


# ---------------------------------------------------------------- identities


def suite_layer_cake(bodies, t_values=(0.01, 0.04), r_values=(0.1, 0.2, 0.5), tol: float = 1e-8) -> SuiteReport:
    rep = SuiteReport("layer_cake", {"t_values": list(t_values), "r_values": list(r_values)}, seed=0)
    worst = 0.0
    for body in bodies:
        for t in t_values:
            for r in r_values:
                lhs, rhs = layer_cake_sides(body, float(t), float(r))
                worst = max(worst, abs(lhs - rhs))
                rep.records.append({"body": body_label(body), "t": float(t), "r": float(r), "lhs": lhs, "rhs": rhs,
                                    "residual": abs(lhs - rhs)})
    rep.check("layer_cake_residual", worst, tol)
    return rep


def suite_duhamel(L: float = 1.0, t_values=(0.01, 0.05, 0.2), tol: float = 1e-6) -> SuiteReport:
    rep = SuiteReport("duhamel", {"L": L, "t_values": list(t_values)}, seed=0)
    worst = 0.0
    for t in t_values:
        res = duhamel_mass_check(L, float(t))
        worst = max(worst, res)
        rep.records.append({"L": L, "t": float(t), "expected_mass": 2 * float(t), "residual": res})
    rep.check("duhamel_mass", worst, tol)
    return rep


# ---------------------------------------------------------------- appendix A


def _appendix_a_one(args):
    idx, seed, n_params = args
    rng = np.random.default_rng([seed, idx])
    poly = random_convex_polygon(rng, scale=float(rng.uniform(0.5, 2.0)))
    m = poly.metrics
    P, A, r_in = m.surface, m.volume, m.inradius
    s_grid = r_in * (np.arange(1, n_params + 1) / (n_params + 1))
    a1 = a2 = a3 = -math.inf
    for s in s_grid:
        per = inner_level_perimeter(poly, s)
        ipb = inner_parallel_body(poly, s)
        a1 = max(a1, (ipb.metrics.surface if ipb is not None else 0.0) - P)
        a2 = max(a2, per - P, (1 - s / r_in) * P - per)
        bnv = boundary_neighborhood_volume(poly, s)
        a3 = max(a3, bnv - s * P, s * P * (1 - s / r_in) - bnv)
    # Bishop-Gromov on geometric radius grids about a vertex, an edge point, the incenter and a random interior point
    centers = [poly.vertices[0], 0.5 * (poly.vertices[0] + poly.vertices[1]), m.incenter]
    w = rng.dirichlet(np.ones(len(poly.vertices)))
    centers.append(w @ poly.vertices)
    radii = np.geomspace(1e-3 * r_in, 4 * float(np.ptp(poly.vertices, axis=0).max()), n_params)
    a4 = -math.inf
    lv_excess = -math.inf
    for c in centers:
        vols = np.array([local_volume(poly, c, rr) for rr in radii])
        q = vols / radii**2
        a4 = max(a4, float(np.max(q[1:] - q[:-1])))
        lv_excess = max(lv_excess, float(np.max(vols - math.pi * radii**2)))
    r5 = r_in * np.geomspace(1e-3, 10, n_params)
    mink = np.array([minkowski_volume(poly, rr) for rr in r5])
    a5_low = float(np.max(r5 * P - (mink - A)))
    c_second = float(np.max((mink - A) / (P * r5 * (1 + r5 / r_in))))
    big = r5 >= r_in
    c_third = float(np.max(mink[big] / (P * r5[big] * (r5[big] / r_in))))
    return {"polygon": idx, "n_vertices": len(poly.vertices), "area": A, "perimeter": P, "inradius": r_in,
            "A1": a1, "A2": a2, "A3": a3, "A4": a4, "local_volume_excess": lv_excess,
            "A5_lower": a5_low, "A5_C_second": c_second, "A5_c2_third": c_third}


def suite_appendix_a(n_polygons: int = 200, n_params: int = 50, seed: int = 0, tol: float = 1e-9, workers: int = 1) -> SuiteReport:
    """Level-set perimeter and strip-volume sandwiches, Bishop-Gromov monotonicity and Minkowski bounds."""
    rep = SuiteReport("appendix_a", {"n_polygons": n_polygons, "n_params": n_params, "tol": tol}, seed=seed)
    rows = pmap(_appendix_a_one, [(i, seed, n_params) for i in range(n_polygons)], workers)
    rep.records.extend(rows)
    for key in ("A1", "A2", "A3", "A4", "local_volume_excess", "A5_lower"):
        rep.check(key, max(r[key] for r in rows), tol)
    c2 = max(r["A5_C_second"] for r in rows)
    c3 = max(r["A5_c2_third"] for r in rows)
    rep.fitted["C_second_display"] = c2
    rep.fitted["c2_third_display"] = c3
    # planar convex bodies: P >= 2 pi r_in and A <= r_in P give the universal values 1 and 5/2 (c1 = 1)
    rep.check("A5_second_display_universal", c2, 1.0 + tol)
    rep.check("A5_third_display_universal", c3, 2.5 + tol)
    return rep


def _omega(body: ConvexBody, spec: dict):
    """Predicate, exact measure and exact |omega + B_r| builder for an omega spec."""
    kind = spec.get("type", "whole")
    if kind == "whole":
        lo, hi = body.bounding_box()
        return (lambda X: body.contains(X)), body.metrics.volume, (lambda r: minkowski_volume(body, r)), (lo, hi)
    if kind == "strip":
        s = float(spec["s"])
        vol = boundary_neighborhood_volume(body, s)
        lo, hi = body.bounding_box()

        def grown(r):
            inner = inner_parallel_body(body, s + r)
            return minkowski_volume(body, r) - (inner.metrics.volume if inner is not None else 0.0)

        pred = lambda X: body.contains(X) & (distance_to_complement(body, X) < s)
        return pred, vol, grown, (lo, hi)
    if kind == "subbox":
        lo = np.asarray(spec["lo"], dtype=float)
        hi = np.asarray(spec["hi"], dtype=float)
        sub = Box(hi - lo, lo)
        corners = sub.as_polygon().vertices if sub.dim == 2 else None
        if corners is not None and not np.all(body.contains(corners) | (distance_to_complement(body, corners) >= 0)):
            raise ConfigInvalid("omega", "sub-box must lie inside the body")
        return (lambda X: sub.contains(X)), sub.metrics.volume, (lambda r: minkowski_volume(sub, r)), (lo, hi)
    raise ConfigInvalid("omega", f"unknown omega type {kind!r}")


def suite_propA6(bodies, r: float, omegas, n: int = 1_000_000, seed: int = 42, n_se: float = 4.0) -> SuiteReport:
    """int_omega r^d / V(x, r) dx <= (4^d/|B_1|) |omega + B_r| and the boundary-refined second display."""
    rep = SuiteReport("propA6", {"r": r, "omegas": list(omegas), "n": n, "n_se": n_se}, seed=seed)
    worst1 = worst2 = -math.inf
    for bi, body in enumerate(bodies):
        if body.dim != 2:
            raise ConfigInvalid("body", "exact local volumes are planar")
        d = 2
        kb = 4**d / unit_ball_volume(d)
        m = body.metrics
        for oi, spec in enumerate(omegas):
            pred, w_vol, grown, (lo, hi) = _omega(body, spec)
            rng = np.random.default_rng([seed, bi, oi])
            box_vol = float(np.prod(hi - lo))
            acc = acc2 = 0.0
            chunk = 200_000
            for k in range(0, n, chunk):
                mm = min(chunk, n - k)
                X = lo + (hi - lo) * rng.random((mm, d))
                f = np.zeros(mm)
                inside = pred(X) & body.contains(X)
                if np.any(inside):
                    f[inside] = r**d / local_volume(body, X[inside], r)
                acc += float(f.sum())
                acc2 += float((f * f).sum())
            mean = acc / n
            var = max(acc2 / n - mean * mean, 0.0)
            lhs = box_vol * mean
            se = box_vol * math.sqrt(var / n)
            rhs1 = kb * grown(r)
            rhs2 = kb * (w_vol + r * r * m.surface / m.inradius * (2 * (d - 1) + (r / m.inradius) ** (d - 2)))
            e1 = (lhs - n_se * se - rhs1) / rhs1
            e2 = (lhs - n_se * se - rhs2) / rhs2
            worst1, worst2 = max(worst1, e1), max(worst2, e2)
            rep.records.append({"body": body_label(body), "omega": spec.get("type", "whole"), "lhs": lhs, "se": se,
                                "rhs_first": rhs1, "rhs_second": rhs2, "ratio_first": lhs / rhs1, "ratio_second": lhs / rhs2})
    rep.check("first_display", worst1, 0.0, detail=f"(LHS - {n_se} se - RHS)/RHS")
    rep.check("second_display", worst2, 0.0, detail=f"(LHS - {n_se} se - RHS)/RHS")
    return rep


# ---------------------------------------------------------------- good sets


def bisect_a_star(beta: float) -> float:
    """Switch point of the defining inequality located by root bracketing."""
    return optimize.brentq(lambda a: a_star_residual(a, beta), 0.0, 1.0 - 1e-15, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def _certified_configs(n: int, seed: int):
    """Random (x0, nu, eps, x, y, d(x)) with x0 in G_{eps,r}, x in its cone and y on the boundary near x0."""
    rng = np.random.default_rng(seed)
    out = []
    poly = None
    while len(out) < n:
        if poly is None or len(out) % 100 == 0:
            poly = random_convex_polygon(rng, scale=float(rng.uniform(0.5, 2.0)))
            v, u, lengths = _edge_frame(poly)
            eps = float(rng.uniform(0.05, 0.45))
            r = eps * poly.metrics.inradius * float(rng.uniform(0.2, 1.0))
            g = good_boundary_set(poly, eps, r)
            if g.measure <= 0:
                poly = None
                continue
            segs = g.segments
            w = np.array([np.linalg.norm(q - p) for p, q in segs])
        k = rng.choice(len(segs), p=w / w.sum())
        p0, q0 = segs[k]
        x0 = p0 + rng.uniform(0.05, 0.95) * (q0 - p0)
        nu = poly.edge_normals[g.edges[k]]
        tan = np.array([-nu[1], nu[0]])
        rho = 0.5 * r * rng.uniform(1e-3, 1 - 1e-9)
        phi = math.asin(eps) * rng.uniform(-1, 1) * (1 - 1e-9)
        x = x0 + rho * (-math.cos(phi) * nu + math.sin(phi) * tan)
        spans = []
        for j in range(len(v)):
            w_ = v[j] - x0
            c_ = w_ @ u[j]
            disc = c_ * c_ - (w_ @ w_ - r * r)
            if disc > 0:
                lo, hi = max(0.0, -c_ - math.sqrt(disc)), min(lengths[j], -c_ + math.sqrt(disc))
                if hi > lo:
                    spans.append((j, lo, hi))
        j, lo, hi = spans[rng.integers(len(spans))]
        y = v[j] + rng.uniform(lo, hi) * u[j]
        if np.linalg.norm(y - x0) >= r:
            continue
        out.append((poly, x0, nu, eps, r, x, y))
    return out


def suite_good_sets(body, eps: float = 0.25, r: float = 0.1, s: float = 0.05, n: int = 1_000_000, seed: int = 42,
                    n_configs: int = 10_000, n_beta: int = 100, n_polygons: int = 30) -> SuiteReport:
    rep = SuiteReport("good_sets", {"epsilon": eps, "r": r, "s": s, "n": n, "n_configs": n_configs}, seed=seed)
    try:
        g = good_boundary_set(body, eps, r)
    except ParamOutOfRange as exc:
        raise ConfigInvalid("r", str(exc)) from exc
    if not 0 < s <= r / 2:
        raise ConfigInvalid("s", "need 0 < s <= r/2")
    if isinstance(body, Box):
        expected = math.fsum(2 * float(np.prod(np.delete(np.maximum(body.lengths - 2 * g.R, 0), i))) for i in range(body.dim))
        rep.check("good_measure_closed_form", abs(g.measure - expected), 1e-12)
    rep.fitted["good_measure"] = g.measure
    # every good point passes the exact cone test
    poly = body.as_polygon() if isinstance(body, Box) else body
    worst_cone = 0.0
    for p0, q0 in g.segments:
        for lam in np.linspace(0.0, 1.0, 11):
            x0 = p0 + lam * (q0 - p0)
            try:
                cert = is_good_point(poly, x0, eps, r)
            except Exception:
                continue
            worst_cone = max(worst_cone, cert.max_ratio)
    rep.check("good_points_certified", worst_cone, eps, ok=worst_cone < eps)
    # bad set: Monte Carlo against the exact witness value
    b = bad_set_volume(body, eps, r, s, n=n, seed=seed)
    z = abs(b.estimate - b.exact) / b.std_error if b.std_error > 0 else 0.0
    rep.records.append({"kind": "bad_set", "key": s, "value": b.ratio, "reference": b.exact_ratio, "aux": b.ratio_se})
    rep.check("bad_ratio_vs_exact_se", z, 4.0)
    bound = r / (eps * body.metrics.inradius)
    rep.fitted["bad_ratio_over_bound"] = b.exact_ratio / bound
    # a*(beta)
    rep.check("a_star_at_one", abs(a_star(1.0)), 0.0)
    betas = np.linspace(0.01, 0.99, n_beta)
    worst = 0.0
    for beta in betas:
        ref = bisect_a_star(float(beta))
        val = a_star(float(beta))
        worst = max(worst, abs(ref - val))
        rep.records.append({"kind": "a_star", "key": float(beta), "value": val, "reference": ref, "aux": float(a_star_residual(val - 1e-6, beta))})
    rep.check("a_star_vs_bisection", worst, 1e-10)
    fails_below = all(a_star_residual(a_star(float(bb)) - 1e-6, bb) < 0 for bb in betas)
    rep.check("a_star_switch", 0.0 if fails_below else 1.0, 0.0, ok=fails_below)
    decreasing = bool(np.all(np.diff(a_star(betas)) < 0))
    rep.check("a_star_decreasing", 0.0 if decreasing else 1.0, 0.0, ok=decreasing)
    # distance inequalities on certified random configurations
    worst = -math.inf
    for poly_, x0, nu, e_, r_, x, y in _certified_configs(n_configs, seed):
        res = good_set_distance_inequalities(x0, nu, e_, x, y, distance_to_complement(poly_, x))
        worst = max(worst, max(res.values()))
    rep.check("distance_inequalities", worst, 1e-12)
    # normal variation and local graph on random polygons
    rng = np.random.default_rng([seed, 7])
    gap_worst, norm_worst, c_emp, param_ok = math.inf, -math.inf, 0.0, True
    for _ in range(n_polygons):
        P = random_convex_polygon(rng)
        e_ = float(rng.uniform(0.1, 0.5))
        r_ = e_ * P.metrics.inradius * float(rng.uniform(0.3, 1.0))
        gg = good_boundary_set(P, e_, r_)
        for p0, q0 in gg.segments:
            x0 = p0 + 0.5 * (q0 - p0)
            s_ = 0.999 * gg.R
            nv = normal_variation_check(P, x0, gg.R, s_)
            gap_worst = min(gap_worst, nv["min_dot_minus_astar"])
            norm_worst = max(norm_worst, nv["max_normal_gap"] - nv["normal_gap_bound"])
            c_emp = max(c_emp, nv["c_empirical"])
            param_ok &= local_parametrization_check(P, x0, e_, r_)["ok"]
    rep.fitted["normal_variation_c_empirical"] = c_emp
    rep.check("normal_dot_above_a_star", -gap_worst, 1e-12)
    rep.check("normal_gap_bound", norm_worst, 1e-12)
    rep.check("normal_variation_c_below_c_star", c_emp, C_STAR)
    rep.check("local_parametrization", 0.0 if param_ok else 1.0, 0.0, ok=param_ok)
    return rep


# ---------------------------------------------------------------- Gaussian upper bounds


def suite_davies_li_yau(bodies, t_grid, delta: float = 0.1, n_pairs: int = 400, seed: int = 0) -> SuiteReport:
    """k <= C t^{-d/2} e^{-|x-y|^2/(4(1+delta)t)} and k <= C e^{...} / V(x, sqrt t), C from the coarsest t."""
    rep = SuiteReport("davies_li_yau", {"delta": delta, "n_pairs": n_pairs}, seed=seed)
    ts = sorted((float(t) for t in t_grid), reverse=True)
    for bi, body in enumerate(bodies):
        _require_box(body)
        rng = np.random.default_rng([seed, bi])
        d_ = body.dim
        X = rng.random((n_pairs, d_)) * body.lengths
        Y = rng.random((n_pairs, d_)) * body.lengths
        X[: n_pairs // 20] = 0.0
        Y[: n_pairs // 40] = 0.0
        cd, cl = [], []
        for t in ts:
            wk = weighted_box_kernel(body.lengths, t, X, Y, delta)
            if d_ == 1:
                V = np.minimum(X[:, 0] + math.sqrt(t), body.lengths[0]) - np.maximum(X[:, 0] - math.sqrt(t), 0.0)
            else:
                V = local_volume(Box(body.lengths), X, math.sqrt(t))
            ly = wk * V / t ** (d_ / 2)
            cd.append(float(wk.max()))
            cl.append(float(ly.max()))
            rep.records.append({"body": body_label(body), "t": t, "C_davies": cd[-1], "C_li_yau": cl[-1]})
        lab = body_label(body)
        rep.fitted[f"{lab}:C_davies"] = cd[0]
        rep.fitted[f"{lab}:C_li_yau"] = cl[0]
        rep.check(f"{lab}:davies", max(cd) / cd[0], 1 + 1e-9, detail="sup_t C(t) / C(coarsest t)")
        rep.check(f"{lab}:li_yau", max(cl) / cl[0], 1 + 1e-9, detail="sup_t C(t) / C(coarsest t)")
        if d_ == 1 and body.lengths[0] == 1.0:
            g, _ = g_norm_estimate(KernelSpec.interval(1.0), delta, [0.5], 0.01)
            rep.fitted["gnorm_interval_x0.5_t0.01"] = g
            rep.check("gnorm_ge_free_value", (4 * math.pi) ** -0.5 - g, 0.0)
    return rep


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class SuiteDef:
    name: str
    run: Callable
    statement: str
    assertions: str
    defaults: dict = field(default_factory=dict)
    needs_body: bool = False
    default_bodies: tuple = ()
    default_t_grid: dict | None = None


def _bodies(ctx):
    return ctx["bodies"]


SUITES: dict[str, SuiteDef] = {}


def _register(name, run, statement, assertions, defaults=None, default_bodies=(), default_t_grid=None):
    SUITES[name] = SuiteDef(name, run, statement, assertions, defaults or {}, bool(default_bodies), tuple(default_bodies), default_t_grid)


_SQ = {"type": "box", "lengths": [1.0, 1.0]}
_INT = {"type": "box", "lengths": [1.0]}

_register(
    "kernel_crosscheck",
    lambda ctx, p: suite_kernel_crosscheck(p["L_values"], p["n"], p["tol"], p["max_seconds"]),
    "Interval Neumann kernel: image sum and cosine series are the same function.",
    "max |images - spectral| <= tol on an n^3 (t, x, y) grid per L; values >= -1e-15; runtime bound.",
    {"L_values": [1.0, 2.0, 0.5], "n": 10, "tol": 1e-12, "max_seconds": 2.0},
)
_register(
    "conservation",
    lambda ctx, p: suite_conservation(p["n_mass"], p["n_semigroup"], ctx["seed"], p["mass_tol"], p["semigroup_tol"]),
    "Neumann kernels preserve mass and satisfy the semigroup (Chapman-Kolmogorov) law.",
    "|mass - 1| <= mass_tol on random samples; semigroup residual <= semigroup_tol.",
    {"n_mass": 100, "n_semigroup": 20, "mass_tol": 1e-9, "semigroup_tol": 1e-8},
)
_register(
    "remainder_poisson",
    lambda ctx, p: suite_remainder_poisson(ctx["bodies"], ctx["t_grid"], p["tol"], p["tol_3d"], p["max_seconds"]),
    "Box heat trace: the two-term remainder equals its Poisson-summation polynomial up to exponentially small terms.",
    "|R(t) - sum_{k>=2} (pi t)^{k/2} e_{d-k}(L)| <= tol; runtime bound.",
    {"tol": 1e-12, "tol_3d": 1e-10, "max_seconds": 1.0},
    default_bodies=(_SQ,),
    default_t_grid={"kind": "list", "values": [0.02, 0.01, 0.005, 0.001]},
)
_register(
    "thm11_scaling",
    lambda ctx, p: suite_thm11_scaling(ctx["bodies"], ctx["t_grid"], tuple(p["fit_k"]), p["expected_slope"], p["slope_tol"]),
    "Two-term asymptotics: |R(t)| = o(sqrt t) as t -> 0 for Lipschitz domains.",
    "log-log slope of |R| over the fit window within slope_tol of expected_slope; |R|/(H sqrt t) strictly decreasing.",
    {"fit_k": [7, 14], "expected_slope": 1.0, "slope_tol": 0.01},
    default_bodies=(_SQ,),
    default_t_grid={"kind": "dyadic", "k_min": 7, "k_max": 20},
)
_register(
    "thm12",
    lambda ctx, p: suite_thm12(ctx["bodies"], ctx["t_grid"], p["epsilon"], p["slack"]),
    "Convex bodies: |R(t)| <= C H sqrt(t) [(sqrt t / r_in)^{1/2 - eps} + (sqrt t / r_in)^{d-1}].",
    "ratio |R|/rhs nonincreasing within slack as t halves (sqrt t <= r_in/4); Kroger margin >= -1e-12.",
    {"epsilon": 0.25, "slack": 0.05},
    default_bodies=(_SQ,),
    default_t_grid={"kind": "dyadic", "k_min": 6, "k_max": 20},
)
_register(
    "prop23",
    lambda ctx, p: suite_prop23(ctx["bodies"], p["n"], p["span"], p["conv_tol"]),
    "Large times: |R(t)| <= C H sqrt(t) (sqrt t / r_in)^{d-1} for sqrt t >= r_in.",
    "sup ratio over sqrt t in [r_in, span r_in] finite (fitted C); ratio at span r_in within conv_tol of its limit (4 pi)^{d/2} r_in^{d-1} / H.",
    {"n": 30, "span": 100.0, "conv_tol": 1e-2},
    default_bodies=(_SQ,),
)
_register(
    "kroger",
    lambda ctx, p: suite_kroger(ctx["bodies"], ctx["t_grid"], p["tol"]),
    "Kroger: (4 pi t)^{d/2} Tr exp(t Laplacian) >= |body| for Neumann conditions on convex sets.",
    "margin >= -tol at every grid point.",
    {"tol": 1e-12},
    default_bodies=(_SQ,),
    default_t_grid={"kind": "dyadic", "k_min": -6, "k_max": 20},
)
_register(
    "thm14_bulk",
    lambda ctx, p: suite_thm14_bulk(ctx["bodies"], ctx["t_grid"], p["delta"], p["eta"], p["n_x"], p["bound"]),
    "Bulk: |k(t,x,x) - (4 pi t)^{-d/2}| <= C t^{-d/2} exp(-d(x)^2 / ((1+delta) t)) when d(x) >= eta sqrt t.",
    "sup ratio <= bound; ratio nonincreasing as t halves at fixed x.",
    {"delta": 0.1, "eta": 1.0, "n_x": 41, "bound": 4.0},
    default_bodies=(_INT, _SQ),
    default_t_grid={"kind": "dyadic", "k_min": 3, "k_max": 16},
)
_register(
    "thm16_boundary",
    lambda ctx, p: suite_thm16_boundary(ctx["bodies"][0], p["epsilon"], p["r"], ctx["t_grid"], p["C"], p["c"], p["n_samples"], ctx["seed"]),
    "Near the boundary, on the sawtooth region of the good set: |(4 pi t)^{d/2} k(t,x,x) - 1 - e^{-d^2/t}| <= C e^{-c d^2/t} (eps + e^{-c r^2/t}), t <= r^2/2.",
    "max LHS/RHS <= 1 with the configured C and c over all samples and t; fitted C and largest valid c reported.",
    {"epsilon": 0.25, "r": 0.125, "C": 3.0, "c": 0.125, "n_samples": 2000},
    default_bodies=(_SQ,),
    default_t_grid={"kind": "dyadic", "k_min": 7, "k_max": 18},
)
_register(
    "prop41_bulk_refined",
    lambda ctx, p: suite_prop41_bulk_refined(ctx["bodies"][0], ctx["t_grid"], p["delta"], p["delta_prime"], p["x"], p["R"], p["growth"]),
    "Refined bulk bound: |(4 pi t)^{d/2} k - 1| <~ (1 + log+(sqrt t / R))^{kappa_d} G-norm e^{-R^2/((1+delta') t)}, kappa_d = 0 for d >= 3.",
    "ratios finite; ratio(t/2) <= growth * ratio(t).",
    {"delta": 0.1, "delta_prime": 0.2, "x": None, "R": None, "growth": 1.5},
    default_bodies=(_SQ,),
    default_t_grid={"kind": "dyadic", "k_min": 3, "k_max": 10},
)
_register(
    "layer_cake",
    lambda ctx, p: suite_layer_cake(ctx["bodies"], p["t_values"], p["r_values"], p["tol"]),
    "int_{d<r} e^{-d^2/t} = 2 int_0^{r/sqrt t} |{d < sqrt(t) s}| s e^{-s^2} ds + |{d<r}| e^{-r^2/t}.",
    "|LHS - RHS| <= tol for every (body, t, r).",
    {"t_values": [0.01, 0.04], "r_values": [0.1, 0.2, 0.5], "tol": 1e-8},
    default_bodies=(_SQ, {"type": "box", "lengths": [2.0, 1.0]}),
)
_register(
    "appendix_a",
    lambda ctx, p: suite_appendix_a(p["n_polygons"], p["n_params"], ctx["seed"], p["tol"], ctx["workers"]),
    "Convex geometry: perimeter monotone under inclusion, level-set and strip sandwiches, Bishop-Gromov, Minkowski-sum bounds.",
    "all sandwich/monotonicity excesses <= tol over random polygons; fitted Minkowski constants within the planar universal values.",
    {"n_polygons": 200, "n_params": 50, "tol": 1e-9},
)
_register(
    "propA6",
    lambda ctx, p: suite_propA6(ctx["bodies"], p["r"], p["omegas"], p["n"], ctx["seed"], p["n_se"]),
    "int_omega r^d / V(x,r) dx <= (4^d/|B_1|) |omega + B_r|, plus the boundary-refined display.",
    "both displays hold within n_se Monte Carlo standard errors.",
    {"r": 0.1, "omegas": [{"type": "whole"}, {"type": "strip", "s": 0.05}, {"type": "subbox", "lo": [0.25, 0.25], "hi": [0.75, 0.75]}],
     "n": 1_000_000, "n_se": 4.0},
    default_bodies=(_SQ,),
)
_register(
    "good_sets",
    lambda ctx, p: suite_good_sets(ctx["bodies"][0], p["epsilon"], p["r"], p["s"], p["n"], ctx["seed"], p["n_configs"], p["n_beta"], p["n_polygons"]),
    "Rolling-ball good sets: measure, certification of good points, bad-set volume, a*(beta), distance and normal-variation estimates.",
    "closed-form measure; exact cone test; MC bad ratio within 4 se of the exact value; a* checks; residuals <= 1e-12.",
    {"epsilon": 0.25, "r": 0.1, "s": 0.05, "n": 1_000_000, "n_configs": 10_000, "n_beta": 100, "n_polygons": 30},
    default_bodies=(_SQ,),
)
_register(
    "duhamel",
    lambda ctx, p: suite_duhamel(p["L"], p["t_values"], p["tol"]),
    "Duhamel representation with unit boundary flux on [0, L]: the total mass at time t is 2t.",
    "|int u - 2t| <= tol.",
    {"L": 1.0, "t_values": [0.01, 0.05, 0.2], "tol": 1e-6},
)
_register(
    "davies_li_yau",
    lambda ctx, p: suite_davies_li_yau(ctx["bodies"], ctx["t_grid"], p["delta"], p["n_pairs"], ctx["seed"]),
    "Gaussian upper bounds: Davies (t^{-d/2}) and Li-Yau (1/V(x, sqrt t)) forms with the weight e^{-|x-y|^2/(4(1+delta)t)}.",
    "constants fitted at the coarsest t dominate every finer t.",
    {"delta": 0.1, "n_pairs": 400},
    default_bodies=(_INT, _SQ),
    default_t_grid={"kind": "dyadic", "k_min": 2, "k_max": 14},
)
