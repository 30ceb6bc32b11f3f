#!/usr/bin/env python3
"""Full d=2 pipeline run: generate, basis, solve, verify, report.

Writes system.json, basis.json, solutions.json and verify.json into the
output directory and prints a short summary of each stage. Exits
nonzero if any stage fails.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from eqlines.cli import main as cli_main


def run(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="d2_run", help="output directory")
    ap.add_argument("--precision", type=int, default=256,
                    help="working precision in bits")
    args = ap.parse_args(argv)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    system = outdir / "system.json"
    basis = outdir / "basis.json"
    solutions = outdir / "solutions.json"
    report = outdir / "verify.json"

    stages = [
        ("generate", ["gen", "--kind", "wh", "--d", "2",
                      "--out", str(system)]),
        ("groebner", ["groebner", "--in", str(system), "--order", "lex",
                      "--out", str(basis)]),
        ("solve", ["solve", "--in", str(basis), "--system", str(system),
                   "--precision", str(args.precision),
                   "--out", str(solutions)]),
        ("verify", ["verify", "--in", str(solutions),
                    "--out", str(report)]),
    ]
    for name, argv_stage in stages:
        t0 = time.monotonic()
        rc = cli_main(argv_stage)
        print(f"[{name}] exit {rc} in {time.monotonic() - t0:.2f}s")
        if rc != 0:
            return rc

    sol_doc = json.loads(solutions.read_text())
    ver_doc = json.loads(report.read_text())
    counts = sol_doc["counts"]
    print(
        f"d=2 summary: total={counts['total']} real={counts['real']} "
        f"real_up_to_sign={counts['real_up_to_sign']} "
        f"orbits={counts['orbits']} verified={ver_doc['all_ok']}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(run())
