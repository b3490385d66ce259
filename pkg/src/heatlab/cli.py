"""Command line: ``heatlab run | list | describe``.

Exit codes: 0 all assertions pass, 1 an assertion (or the regression gate)
failed, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .config import load_config, run_config
from .errors import ConfigInvalid, NumericalFailure
from .report import compare_fitted, write_run
from .suites import SUITES

log = logging.getLogger("heatlab")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


def _cmd_list(args) -> int:
    width = max(len(n) for n in SUITES)
    for name, s in SUITES.items():
        print(f"{name:<{width}}  {s.statement}")
    return EXIT_OK


def _cmd_describe(args) -> int:
    s = SUITES.get(args.suite)
    if s is None:
        print(f"unknown suite {args.suite!r}; see `heatlab list`", file=sys.stderr)
        return EXIT_CONFIG
    print(f"suite: {s.name}")
    print(f"statement: {s.statement}")
    print(f"assertions: {s.assertions}")
    print("parameters (defaults):")
    for k, v in s.defaults.items():
        print(f"  {k} = {json.dumps(v)}")
    if s.default_bodies:
        print(f"default bodies: {json.dumps(list(s.default_bodies))}")
    if s.default_t_grid:
        print(f"default t_grid: {json.dumps(s.default_t_grid)}")
    return EXIT_OK


def _cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        out = args.out or os.environ.get("HEATLAB_OUT") or cfg.output_dir
        rep = run_config(cfg, workers=args.parallel)
    except ConfigInvalid as exc:
        print(f"config error [{exc.key}]: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    paths = write_run(rep, out, cfg.digest(), __version__)
    for a in rep.assertions:
        mark = "PASS" if a.passed else "FAIL"
        print(f"{mark} {rep.name}.{a.name}: {a.value:.6g} (tolerance {a.tolerance:.6g})")
    code = EXIT_OK if rep.passed else EXIT_FAIL
    if args.baseline:
        base = json.loads(Path(args.baseline).read_text()).get("fitted", {})
        drift = compare_fitted(rep.fitted, base)
        for k in drift:
            print(f"FAIL regression {k}: {rep.fitted.get(k)!r} vs baseline {base[k]!r}")
        if drift:
            code = EXIT_FAIL
    print(f"wrote {paths['csv']} ({len(rep.records)} rows), {paths['summary']}, {len(paths['plots'])} plots")
    if code != EXIT_OK:
        print("failed: " + ", ".join(a.name for a in rep.failures()), file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heatlab", description="Neumann heat-kernel and heat-trace verification suites.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run the suite named in a JSON config")
    r.add_argument("config")
    r.add_argument("--out", help="output directory (default: $HEATLAB_OUT or the config's output_dir)")
    r.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes for parallel sweeps")
    r.add_argument("--seed", type=int, help="override the config seed")
    r.add_argument("--baseline", help="earlier summary JSON; fitted constants must agree to 1e-6 relative")
    r.set_defaults(func=_cmd_run)
    sub.add_parser("list", help="list suites").set_defaults(func=_cmd_list)
    d = sub.add_parser("describe", help="show the parameters and assertions of a suite")
    d.add_argument("suite")
    d.set_defaults(func=_cmd_describe)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
