"""Full 100-repetition grid on every bundled network.

    python scripts/run_grid.py [--out results] [--workers 4]

Writes results.csv, one SVG chart plus CSV sidecar per (dataset, scenario)
and tables.txt with the noise-free summary.
"""

import argparse
import time

from evident.experiment import ExperimentConfig, report_tables, run_sweep
from evident.graphs import BUILTIN


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--reps", type=int, default=100)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    config = ExperimentConfig(datasets=BUILTIN, reps=args.reps, seed=args.seed,
                              workers=args.workers, out=args.out)
    start = time.perf_counter()
    result = run_sweep(config)
    print(report_tables(result))
    print(f"{len(result)} cells in {time.perf_counter() - start:.0f}s -> {args.out}/")


if __name__ == "__main__":
    main()
