"""Noise-free probabilistic NMI under both column layouts.

    python scripts/compare_layouts.py [--reps 100]

``first`` keeps the class-interval value in column 0; ``class`` puts it in
the node's own class column.
"""

import argparse

from evident.experiment import ExperimentConfig, run_cell
from evident.graphs import BUILTIN


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=100)
    args = ap.parse_args()
    print(f"{'dataset':<10} {'scenario':>8} {'first':>8} {'class':>8}")
    for dataset in BUILTIN:
        for scenario in (1, 2):
            means = [
                run_cell(ExperimentConfig(reps=args.reps, layout=layout), "probabilistic", scenario, 0, dataset).mean
                for layout in ("first", "class")
            ]
            print(f"{dataset:<10} {scenario:>8} {means[0]:>8.3f} {means[1]:>8.3f}")


if __name__ == "__main__":
    main()
