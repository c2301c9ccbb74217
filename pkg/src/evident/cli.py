"""Command line entry point: ``evident run | datasets | nmi | attributes``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys

from evident import attributes as attrs
from evident.experiment import ConfigError, ExperimentConfig, read_config_file, report_tables, run_sweep
from evident.graphs import BUILTIN, builtin
from evident.metrics import nmi

# flag name -> config key; None means "not given" so the config file wins
RUN_FLAGS = ("dataset", "kinds", "scenarios", "reps", "noise", "seed", "restarts", "max_iter",
             "layout", "workers", "out")


def _run(args) -> int:
    values = read_config_file(args.config) if args.config else {}
    for key in RUN_FLAGS:
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    values.setdefault("out", "results")
    config = ExperimentConfig.from_mapping(values)
    result = run_sweep(config)
    text = report_tables(result)
    sys.stdout.write(text)
    print(f"{len(result)} cells written to {config.out}")
    return 0


def _datasets(args) -> int:
    for name in BUILTIN:
        network, truth = builtin(name)
        sizes = "/".join(map(str, truth.sizes()))
        print(f"{name:<10} nodes={network.N:<4} edges={len(network.edges):<4} "
              f"communities={truth.n} sizes={sizes}")
    return 0


def read_labels(path) -> dict[str, str]:
    """Two-column CSV with a header row: node id, then label."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 2:
        raise ValueError(f"{path}: expected a header and at least one row")
    out = {}
    for lineno, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) < 2:
            raise ValueError(f"{path}:{lineno}: expected 'node,label'")
        if row[0] in out:
            raise ValueError(f"{path}:{lineno}: node {row[0]!r} listed twice")
        out[row[0].strip()] = row[1].strip()
    return out


def _nmi(args) -> int:
    pred, truth = read_labels(args.pred), read_labels(args.truth)
    if set(pred) != set(truth):
        missing = sorted(set(pred) ^ set(truth))[:5]
        raise ValueError(f"prediction and truth cover different nodes, e.g. {missing}")
    print(f"{nmi(pred, truth, args.variant):.6f}")
    return 0


def _attributes(args) -> int:
    _, truth = builtin(args.dataset)
    table = attrs.generate(args.kind, truth, args.seed, args.layout)
    if args.scenario == 2:
        table = attrs.sort_to_true_class(table)
    if args.noise:
        table, _ = attrs.inject_noise(table, truth, attrs.NoiseSpec(args.noise, args.seed + 1))
    table.to_csv(args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evident", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a grid of repeated clustering experiments")
    run.add_argument("--config", help="key = value file; flags override it")
    run.add_argument("--dataset", help=f"comma list of {', '.join(BUILTIN)}")
    run.add_argument("--kinds", help="comma list of numerical, probabilistic, evidential")
    run.add_argument("--scenarios", help="1, 2 or 1,2")
    run.add_argument("--reps", help="repetitions per cell (default 100)")
    run.add_argument("--noise", help="noisy node counts, e.g. 0..9 or 0,3,9")
    run.add_argument("--seed", help="root seed (default 42)")
    run.add_argument("--restarts", help="k-medoids restarts (default 10)")
    run.add_argument("--max-iter", dest="max_iter", help="k-medoids SWAP sweeps (default 100)")
    run.add_argument("--layout", help="probabilistic layout: first (default) or class")
    run.add_argument("--workers", help="parallel worker processes (default 1)")
    run.add_argument("--out", help="output directory (default results/)")
    run.set_defaults(func=_run)

    ds = sub.add_parser("datasets", help="list the bundled networks")
    ds.set_defaults(func=_datasets)

    score = sub.add_parser("nmi", help="NMI between two node,label CSV files")
    score.add_argument("--pred", required=True)
    score.add_argument("--truth", required=True)
    score.add_argument("--variant", default="standard", choices=("standard", "paper_literal"))
    score.set_defaults(func=_nmi)

    gen = sub.add_parser("attributes", help="write one generated attribute table as CSV")
    gen.add_argument("--dataset", default="karate", choices=BUILTIN)
    gen.add_argument("--kind", default="evidential", choices=attrs.KINDS)
    gen.add_argument("--scenario", type=int, default=1, choices=(1, 2))
    gen.add_argument("--noise", type=int, default=0)
    gen.add_argument("--seed", type=int, default=42)
    gen.add_argument("--layout", default="first", choices=attrs.LAYOUTS)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_attributes)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ValueError, KeyError, OSError, ZeroDivisionError) as exc:
        print(f"evident: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
