#!/usr/bin/env python3
"""Run every experiment with its default grid and write one CSV per experiment."""

import argparse
import logging
import time
from pathlib import Path

from repetilab.experiments import EXPERIMENTS, ExperimentSpec, header_lines, rows_to_csv, run_experiment

log = logging.getLogger("run_experiments")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results", help="output directory")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--timeout", type=float, default=60.0)
    ap.add_argument("--only", nargs="*", choices=list(EXPERIMENTS), help="subset of experiments")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.only or EXPERIMENTS:
        spec = ExperimentSpec(name, seed=args.seed, jobs=args.jobs, timeout=args.timeout)
        t0 = time.perf_counter()
        rows = run_experiment(spec)
        path = out / f"{name}.csv"
        path.write_text(rows_to_csv(rows, header_lines(spec)))
        errors = sum(1 for r in rows if "error" in r)
        log.info("%s: %d rows (%d errors) in %.1fs -> %s", name, len(rows), errors,
                 time.perf_counter() - t0, path)


if __name__ == "__main__":
    main()
