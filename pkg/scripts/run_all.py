"""Run every config under scripts/configs through the CLI and tabulate exit codes.

    python scripts/run_all.py [--out results] [--parallel 4] [--only 05 07]

Each config writes into <out>/<config stem>/. The exit status is the worst
exit code seen.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from heatlab.cli import main as heatlab_main

HERE = Path(__file__).resolve().parent


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--parallel", type=int, default=1)
    ap.add_argument("--only", nargs="*", help="config name prefixes to run")
    args = ap.parse_args(argv)
    configs = sorted((HERE / "configs").glob("*.json"))
    if args.only:
        configs = [c for c in configs if any(c.stem.startswith(p) for p in args.only)]
    worst, rows = 0, []
    for cfg in configs:
        t0 = time.perf_counter()
        code = heatlab_main(["run", str(cfg), "--out", str(Path(args.out) / cfg.stem), "--parallel", str(args.parallel)])
        rows.append((cfg.stem, code, time.perf_counter() - t0))
        worst = max(worst, code)
    print()
    for stem, code, secs in rows:
        print(f"{'ok' if code == 0 else f'exit {code}':>7}  {secs:7.2f} s  {stem}")
    return worst


if __name__ == "__main__":
    sys.exit(main())
