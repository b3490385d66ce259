from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("heatlab", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("heatlab")

# one line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# reduced sizes so that every registered suite runs in a second or two
SMALL_RUNS: dict[str, dict] = {
    "kernel_crosscheck": {"params": {"n": 4}},
    "conservation": {"params": {"n_mass": 10, "n_semigroup": 5}},
    "remainder_poisson": {},
    "thm11_scaling": {},
    "thm12": {"t_grid": {"kind": "dyadic", "k_min": 6, "k_max": 12}},
    "prop23": {"params": {"n": 8}},
    "kroger": {"t_grid": {"kind": "dyadic", "k_min": -2, "k_max": 10}},
    "thm14_bulk": {"params": {"n_x": 11}, "t_grid": {"kind": "dyadic", "k_min": 3, "k_max": 8}},
    "thm16_boundary": {"params": {"n_samples": 200}, "t_grid": {"kind": "dyadic", "k_min": 7, "k_max": 10}},
    "prop41_bulk_refined": {"t_grid": {"kind": "dyadic", "k_min": 3, "k_max": 6}},
    "layer_cake": {"params": {"r_values": [0.1, 0.5]}},
    "appendix_a": {"params": {"n_polygons": 4, "n_params": 5}},
    "propA6": {"params": {"n": 20_000}},
    "good_sets": {"params": {"n": 20_000, "n_configs": 300, "n_beta": 20, "n_polygons": 3}},
    "duhamel": {"params": {"t_values": [0.05]}},
    "davies_li_yau": {"params": {"n_pairs": 40}, "t_grid": {"kind": "dyadic", "k_min": 2, "k_max": 6}},
}


def small_config(name: str, seed: int = 0, **extra) -> dict:
    cfg = {"schema_version": 1, "suite": name, "seed": seed, **SMALL_RUNS[name]}
    cfg.update(extra)
    return cfg
