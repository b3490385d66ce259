from __future__ import annotations

import csv
import hashlib
import io
import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest
from conftest import small_config

import heatlab.suites
from heatlab.cli import main
from heatlab.config import parse_config
from heatlab.errors import QuadratureFailure


def _write(tmp_path, cfg, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg))
    return str(p)


def _run(tmp_path, cfg, *extra, out="out"):
    return main(["run", _write(tmp_path, cfg), "--out", str(tmp_path / out), *extra])


def test_list_and_describe(capsys):
    assert main(["list"]) == 0
    listed = capsys.readouterr().out
    for name in heatlab.suites.SUITES:
        assert name in listed
    assert main(["describe", "thm16_boundary"]) == 0
    out = capsys.readouterr().out
    assert "epsilon = 0.25" in out and "r = 0.125" in out and "assertions:" in out
    assert main(["describe", "nope"]) == 2


def test_run_passes_and_writes_artifacts(tmp_path, capsys):
    assert _run(tmp_path, small_config("thm12")) == 0
    out = capsys.readouterr().out
    assert "PASS thm12.box(1,1):ratio_nonincreasing" in out
    d = tmp_path / "out"
    rows = list(csv.DictReader(io.StringIO((d / "thm12.csv").read_text())))
    assert rows and {"body", "t", "R", "ratio"} <= set(rows[0])
    assert "\r" not in (d / "thm12.csv").read_text()
    summary = json.loads((d / "thm12_summary.json").read_text())
    assert summary["schema"] == "heatlab.summary/1" and summary["passed"] is True
    assert "fitted" in summary
    for svg in d.glob("*.svg"):
        assert ET.parse(svg).getroot().tag.endswith("svg")
    assert list(d.glob("*.svg"))


def test_manifest_hashes_and_config_digest(tmp_path):
    cfg = small_config("duhamel")
    assert _run(tmp_path, cfg) == 0
    d = tmp_path / "out"
    man = json.loads((d / "manifest.json").read_text())
    assert man["config_hash"] == parse_config(cfg).digest()
    assert man["seed"] == 0
    for a in man["artifacts"]:
        assert hashlib.sha256((d / a["path"]).read_bytes()).hexdigest() == a["sha256"]
    # output_dir does not take part in the digest
    assert parse_config({**cfg, "output_dir": "elsewhere"}).digest() == man["config_hash"]


def test_csv_floats_round_trip(tmp_path):
    assert _run(tmp_path, small_config("remainder_poisson")) == 0
    rows = list(csv.DictReader((tmp_path / "out" / "remainder_poisson.csv").open()))
    for r in rows:
        t = float(r["t"])
        assert format(t, ".17g") == r["t"]


def test_rerun_is_byte_identical(tmp_path):
    cfg = small_config("good_sets", seed=3)
    assert _run(tmp_path, cfg, out="a") == 0
    assert _run(tmp_path, cfg, out="b") == 0
    assert (tmp_path / "a" / "good_sets.csv").read_bytes() == (tmp_path / "b" / "good_sets.csv").read_bytes()


def test_out_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("HEATLAB_OUT", str(tmp_path / "env"))
    assert main(["run", _write(tmp_path, small_config("duhamel"))]) == 0
    assert (tmp_path / "env" / "duhamel.csv").exists()


@pytest.mark.parametrize("cfg, key", [
    ({"suite": "duhamel", "colour": "red"}, "colour"),
    ({"suite": "duhamel", "params": {"tolerance": 1}}, "tolerance"),
    ({"suite": "thm16_boundary", "params": {"r": 0.2}}, "r"),
    ({"suite": "no_such_suite"}, "suite"),
    ({"suite": "thm12", "t_grid": {"kind": "dyadic", "k_min": 3}}, "t_grid.k_max"),
    ({"suite": "thm12", "body": {"type": "box", "lengths": [1.0, -1.0]}}, "body"),
])
def test_config_errors_exit_2_and_name_the_key(tmp_path, capsys, cfg, key):
    assert _run(tmp_path, cfg) == 2
    assert f"[{key}]" in capsys.readouterr().err


def test_numerical_failure_exits_3(tmp_path, monkeypatch):
    def boom(*a, **k):
        raise QuadratureFailure("forced")

    monkeypatch.setattr(heatlab.suites, "duhamel_mass_check", boom)
    assert _run(tmp_path, small_config("duhamel")) == 3


def test_impossible_tolerance_exits_1(tmp_path, capsys):
    cfg = small_config("kernel_crosscheck", params={"n": 4, "tol": 1e-30})
    assert _run(tmp_path, cfg) == 1
    assert "FAIL kernel_crosscheck." in capsys.readouterr().out


def test_baseline_gate(tmp_path, capsys):
    cfg = small_config("thm11_scaling")
    assert _run(tmp_path, cfg, out="base") == 0
    base = tmp_path / "base" / "thm11_scaling_summary.json"
    assert _run(tmp_path, cfg, "--baseline", str(base), out="again") == 0
    data = json.loads(base.read_text())
    key = next(iter(data["fitted"]))
    data["fitted"][key] = data["fitted"][key] * (1 + 1e-5)
    drifted = tmp_path / "drifted.json"
    drifted.write_text(json.dumps(data))
    capsys.readouterr()
    assert _run(tmp_path, cfg, "--baseline", str(drifted), out="third") == 1
    assert f"FAIL regression {key}" in capsys.readouterr().out


def test_seed_override_changes_sampled_suites(tmp_path):
    cfg = small_config("conservation")
    assert _run(tmp_path, cfg, out="s0") == 0
    assert _run(tmp_path, cfg, "--seed", "9", out="s9") == 0
    assert (tmp_path / "s0" / "conservation.csv").read_bytes() != (tmp_path / "s9" / "conservation.csv").read_bytes()
    assert json.loads((tmp_path / "s9" / "manifest.json").read_text())["seed"] == 9


def test_console_entry_point(tmp_path):
    p = subprocess.run([sys.executable, "-m", "heatlab.cli", "list"], capture_output=True, text=True, check=True)
    assert "kroger" in p.stdout
