"""Persistence: CSV records, JSON summaries, SVG plots and the run manifest.

CSV bodies depend only on the suite's records, so identical config and seed
give byte-identical files. Timestamps and wall clock live in the JSON files.
"""
from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import math
from pathlib import Path

import numpy as np

from .harness import SuiteReport

SUMMARY_SCHEMA = "heatlab.summary/1"
MANIFEST_SCHEMA = "heatlab.manifest/1"
REGRESSION_RTOL = 1e-6

__all__ = [
    "format_value",
    "csv_text",
    "write_csv",
    "summary_dict",
    "write_summary",
    "svg_loglog",
    "write_plots",
    "write_manifest",
    "compare_fitted",
    "write_run",
]


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if isinstance(v, (list, tuple, np.ndarray)):
        return " ".join(format_value(x) for x in np.ravel(v))
    return str(v)


def _columns(records) -> list:
    cols = []
    for rec in records:
        for k in rec:
            if k not in cols:
                cols.append(k)
    return cols


def csv_text(records) -> str:
    buf = io.StringIO()
    cols = _columns(records)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for rec in records:
        w.writerow([format_value(rec.get(c)) for c in cols])
    return buf.getvalue()


def write_csv(records, path) -> Path:
    path = Path(path)
    path.write_bytes(csv_text(records).encode("utf-8"))
    return path


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        f = float(v)
        return f if math.isfinite(f) else str(f)
    return v


def summary_dict(rep: SuiteReport, config_hash: str | None = None) -> dict:
    return _jsonable({
        "schema": SUMMARY_SCHEMA,
        "suite": rep.name,
        "config_hash": config_hash,
        "seed": rep.seed,
        "params": rep.params,
        "passed": rep.passed,
        "assertions": [
            {"name": a.name, "passed": a.passed, "value": a.value, "tolerance": a.tolerance, "detail": a.detail}
            for a in rep.assertions
        ],
        "fitted": rep.fitted,
        "notes": rep.notes,
        "n_records": len(rep.records),
        "wall_clock_seconds": rep.wall_clock,
    })


def write_summary(rep: SuiteReport, path, config_hash: str | None = None) -> Path:
    path = Path(path)
    path.write_text(json.dumps(summary_dict(rep, config_hash), indent=2, sort_keys=True) + "\n")
    return path


# ---------------------------------------------------------------- SVG


_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"]


def svg_loglog(series: dict, title: str, xlabel: str, ylabel: str, width: int = 640, height: int = 420) -> str:
    """Standalone SVG of positive (x, y) series on log-log axes; ``series`` maps label -> (xs, ys)."""
    clean = {}
    for lab, (xs, ys) in series.items():
        xs, ys = np.asarray(xs, dtype=float), np.abs(np.asarray(ys, dtype=float))
        ok = (xs > 0) & (ys > 0) & np.isfinite(xs) & np.isfinite(ys)
        if ok.sum() >= 1:
            order = np.argsort(xs[ok])
            clean[lab] = (np.log10(xs[ok][order]), np.log10(ys[ok][order]))
    ml, mr, mt, mb = 70, 150, 36, 50
    pw, ph = width - ml - mr, height - mt - mb
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="13">{_esc(title)}</text>']
    if not clean:
        out.append(f'<text x="{width / 2:.1f}" y="{height / 2:.1f}" text-anchor="middle">no positive data</text></svg>')
        return "\n".join(out) + "\n"
    allx = np.concatenate([v[0] for v in clean.values()])
    ally = np.concatenate([v[1] for v in clean.values()])
    x0, x1 = math.floor(allx.min()), math.ceil(allx.max())
    y0, y1 = math.floor(ally.min()), math.ceil(ally.max())
    x1, y1 = max(x1, x0 + 1), max(y1, y0 + 1)

    def X(v):
        return ml + (v - x0) / (x1 - x0) * pw

    def Y(v):
        return mt + ph - (v - y0) / (y1 - y0) * ph

    out.append(f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    xstep = max(1, math.ceil((x1 - x0) / 10))
    ystep = max(1, math.ceil((y1 - y0) / 10))
    for k in range(x0, x1 + 1, xstep):
        out.append(f'<line x1="{X(k):.2f}" y1="{mt}" x2="{X(k):.2f}" y2="{mt + ph}" stroke="#ddd"/>')
        out.append(f'<text x="{X(k):.2f}" y="{mt + ph + 15}" text-anchor="middle">1e{k}</text>')
    for k in range(y0, y1 + 1, ystep):
        out.append(f'<line x1="{ml}" y1="{Y(k):.2f}" x2="{ml + pw}" y2="{Y(k):.2f}" stroke="#ddd"/>')
        out.append(f'<text x="{ml - 6}" y="{Y(k) + 4:.2f}" text-anchor="end">1e{k}</text>')
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 12}" text-anchor="middle">{_esc(xlabel)}</text>')
    out.append(f'<text transform="translate(16 {mt + ph / 2:.1f}) rotate(-90)" text-anchor="middle">{_esc(ylabel)}</text>')
    for i, (lab, (lx, ly)) in enumerate(clean.items()):
        col = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{X(a):.2f},{Y(b):.2f}" for a, b in zip(lx, ly))
        out.append(f'<polyline fill="none" stroke="{col}" stroke-width="1.5" points="{pts}"/>')
        for a, b in zip(lx, ly):
            out.append(f'<circle cx="{X(a):.2f}" cy="{Y(b):.2f}" r="2" fill="{col}"/>')
        yl = mt + 14 + 16 * i
        out.append(f'<line x1="{ml + pw + 10}" y1="{yl - 4}" x2="{ml + pw + 28}" y2="{yl - 4}" stroke="{col}" stroke-width="2"/>')
        out.append(f'<text x="{ml + pw + 32}" y="{yl}">{_esc(lab)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


_PLOT_KEYS = ("R", "ratio", "ratio_prop22", "sup_ratio", "max_lhs", "lhs", "C_davies", "C_li_yau", "margin")


def write_plots(rep: SuiteReport, out_dir) -> list:
    """One log-log SVG per plottable column against t, grouped by body."""
    out_dir = Path(out_dir)
    recs = [r for r in rep.records if isinstance(r.get("t"), (float, int, np.floating))]
    if not recs:
        return []
    paths = []
    for key in _PLOT_KEYS:
        rows = [r for r in recs if isinstance(r.get(key), (float, int, np.floating))]
        if len(rows) < 2:
            continue
        groups: dict = {}
        for r in rows:
            lab = next((f"{g}={format_value(r[g])}" for g in ("body", "radius", "L") if g in r), rep.name)
            groups.setdefault(lab, ([], []))
            groups[lab][0].append(float(r["t"]))
            groups[lab][1].append(float(r[key]))
        svg = svg_loglog(groups, f"{rep.name}: |{key}| vs t", "t", f"|{key}|")
        p = out_dir / f"{rep.name}_{key}_vs_t.svg"
        p.write_text(svg)
        paths.append(p)
    return paths


# ---------------------------------------------------------------- manifest and regression gate


def _sha256(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(out_dir, config_hash: str, seed: int, artifacts, version: str) -> Path:
    out_dir = Path(out_dir)
    now = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    data = {
        "schema": MANIFEST_SCHEMA,
        "config_hash": config_hash,
        "version": version,
        "timestamp": now,
        "seed": seed,
        "artifacts": [{"path": Path(a).name, "sha256": _sha256(a)} for a in artifacts],
    }
    p = out_dir / "manifest.json"
    p.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return p


def compare_fitted(current: dict, baseline: dict, rtol: float = REGRESSION_RTOL) -> list:
    """Names of fitted constants whose relative change exceeds ``rtol`` (missing ones included)."""
    bad = []
    for k, old in baseline.items():
        new = current.get(k)
        if not isinstance(old, (int, float)) or not isinstance(new, (int, float)):
            if new != old:
                bad.append(k)
            continue
        scale = abs(old) if old != 0 else 1.0
        if abs(new - old) / scale > rtol:
            bad.append(k)
    return bad


def write_run(rep: SuiteReport, out_dir, config_hash: str, version: str) -> dict:
    """Write CSV, summary, plots and manifest; returns the artifact paths by kind."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = write_csv(rep.records, out_dir / f"{rep.name}.csv")
    summary = write_summary(rep, out_dir / f"{rep.name}_summary.json", config_hash)
    plots = write_plots(rep, out_dir)
    manifest = write_manifest(out_dir, config_hash, rep.seed, [csv_path, summary, *plots], version)
    return {"csv": csv_path, "summary": summary, "plots": plots, "manifest": manifest}
