"""JSON experiment configuration.

Schema (version 1)::

    {
      "schema_version": 1,
      "suite": "<name from `heatlab list`>",
      "body": {"type": "box", "lengths": [1, 1]}   or a list of such dicts,
      "t_grid": {"kind": "dyadic", "k_min": 7, "k_max": 20}
              | {"kind": "list", "values": [...]}
              | {"kind": "log", "t_min": ..., "t_max": ..., "n": ...},
      "params": {...suite parameters, see `heatlab describe <suite>`...},
      "seed": 0,
      "output_dir": "out"
    }

Only ``suite`` is required. Unknown keys at any level raise ``ConfigInvalid``
naming the key.
"""
from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigInvalid, HeatlabError
from .geometry import body_from_dict
from .harness import dyadic_grid
from .suites import SUITES

SCHEMA_VERSION = 1
TOP_KEYS = {"schema_version", "suite", "body", "t_grid", "params", "seed", "output_dir"}
GRID_KEYS = {"dyadic": {"k_min", "k_max"}, "list": {"values"}, "log": {"t_min", "t_max", "n"}}


@dataclass
class ExperimentConfig:
    suite: str
    bodies: list = field(default_factory=list)
    t_grid: dict | None = None
    params: dict = field(default_factory=dict)
    seed: int = 0
    output_dir: str = "heatlab-out"
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        out = {"schema_version": self.schema_version, "suite": self.suite, "params": self.params,
               "seed": self.seed, "output_dir": self.output_dir}
        if self.bodies:
            out["body"] = self.bodies
        if self.t_grid is not None:
            out["t_grid"] = self.t_grid
        return out

    def digest(self) -> str:
        """sha256 of the canonical JSON form (sorted keys, no whitespace, output_dir excluded)."""
        d = self.to_dict()
        d.pop("output_dir")
        blob = json.dumps(d, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def resolved_params(self) -> dict:
        p = copy.deepcopy(SUITES[self.suite].defaults)
        p.update(copy.deepcopy(self.params))
        return p

    def t_values(self) -> np.ndarray | None:
        g = self.t_grid or SUITES[self.suite].default_t_grid
        return None if g is None else build_t_grid(g)

    def build_bodies(self) -> list:
        specs = self.bodies or list(SUITES[self.suite].default_bodies)
        out = []
        for i, spec in enumerate(specs):
            try:
                out.append(body_from_dict(spec))
            except (HeatlabError, KeyError, TypeError, ValueError) as exc:
                raise ConfigInvalid("body", f"entry {i}: {exc}") from exc
        return out


def build_t_grid(spec: dict) -> np.ndarray:
    if not isinstance(spec, dict):
        raise ConfigInvalid("t_grid", "must be an object")
    kind = spec.get("kind")
    if kind not in GRID_KEYS:
        raise ConfigInvalid("t_grid.kind", f"expected one of {sorted(GRID_KEYS)}")
    extra = set(spec) - GRID_KEYS[kind] - {"kind"}
    if extra:
        raise ConfigInvalid(f"t_grid.{sorted(extra)[0]}", "unknown key")
    missing = GRID_KEYS[kind] - set(spec)
    if missing:
        raise ConfigInvalid(f"t_grid.{sorted(missing)[0]}", "missing")
    if kind == "dyadic":
        if not int(spec["k_max"]) >= int(spec["k_min"]):
            raise ConfigInvalid("t_grid.k_max", "must be >= k_min")
        return dyadic_grid(int(spec["k_min"]), int(spec["k_max"]))
    if kind == "list":
        vals = np.asarray(spec["values"], dtype=float)
        if vals.ndim != 1 or len(vals) == 0 or np.any(~(vals > 0)):
            raise ConfigInvalid("t_grid.values", "need a nonempty list of positive times")
        return vals
    if not 0 < float(spec["t_min"]) < float(spec["t_max"]) or int(spec["n"]) < 2:
        raise ConfigInvalid("t_grid", "need 0 < t_min < t_max and n >= 2")
    return np.geomspace(float(spec["t_min"]), float(spec["t_max"]), int(spec["n"]))[::-1].copy()


def parse_config(data: dict) -> ExperimentConfig:
    if not isinstance(data, dict):
        raise ConfigInvalid("<root>", "config must be a JSON object")
    extra = set(data) - TOP_KEYS
    if extra:
        raise ConfigInvalid(sorted(extra)[0], "unknown key")
    if "suite" not in data:
        raise ConfigInvalid("suite", "missing")
    suite = data["suite"]
    if suite not in SUITES:
        raise ConfigInvalid("suite", f"unknown suite {suite!r}; see `heatlab list`")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigInvalid("schema_version", f"unsupported version {version}")
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ConfigInvalid("params", "must be an object")
    allowed = set(SUITES[suite].defaults)
    for k in params:
        if k not in allowed:
            raise ConfigInvalid(k, f"not a parameter of suite {suite!r} (allowed: {sorted(allowed)})")
    seed = data.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ConfigInvalid("seed", "must be a nonnegative integer")
    body = data.get("body", [])
    bodies = body if isinstance(body, list) else [body]
    if any(not isinstance(b, dict) for b in bodies):
        raise ConfigInvalid("body", "each body must be an object")
    cfg = ExperimentConfig(suite=suite, bodies=bodies, t_grid=data.get("t_grid"), params=params, seed=seed,
                           output_dir=str(data.get("output_dir", "heatlab-out")), schema_version=version)
    cfg.build_bodies()
    cfg.t_values()
    return cfg


def load_config(path) -> ExperimentConfig:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except FileNotFoundError as exc:
        raise ConfigInvalid("<path>", f"{p} does not exist") from exc
    except json.JSONDecodeError as exc:
        raise ConfigInvalid("<json>", f"{p}: {exc}") from exc
    return parse_config(data)


def run_config(cfg: ExperimentConfig, workers: int = 1):
    """Execute the configured suite; returns its SuiteReport with wall clock filled in."""
    import time

    sdef = SUITES[cfg.suite]
    ctx = {"bodies": cfg.build_bodies(), "t_grid": cfg.t_values(), "seed": cfg.seed, "workers": workers}
    t0 = time.perf_counter()
    rep = sdef.run(ctx, cfg.resolved_params())
    rep.wall_clock = time.perf_counter() - t0
    rep.seed = cfg.seed
    return rep
