"""Repeated generate / perturb / cluster / score runs over a grid of settings.

One repetition of a grid cell ``(dataset, kind, scenario, noise)``:

1. generate first-scenario attributes from the ground truth;
2. on the second scenario, swap each row's largest value onto the true class;
3. regenerate ``noise`` random rows with an off-class primary value;
4. cluster with k-medoids, ``k`` = number of true communities;
5. score the clusters against the ground truth with NMI.

Every random choice is seeded from a hash of the root seed and the cell
coordinates, so adding cells never changes the numbers of existing ones.
"""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from evident import attributes as attrs
from evident.clustering import distance_matrix, kmedoids
from evident.graphs import BUILTIN, GroundTruth, builtin
from evident.metrics import RunReport, nmi
from evident.plots import line_chart

log = logging.getLogger(__name__)

DEFAULT_NOISE = tuple(range(10))


class ConfigError(ValueError):
    pass


def parse_int_list(text: str) -> tuple[int, ...]:
    """``"0..9"``, ``"1,2,5"`` or a mix like ``"0..3,9"``; order kept, duplicates dropped."""
    out: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(-?\d+)\s*\.\.\s*(-?\d+)", part)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            if b < a:
                raise ConfigError(f"empty range {part!r}")
            values = range(a, b + 1)
        elif re.fullmatch(r"-?\d+", part):
            values = [int(part)]
        else:
            raise ConfigError(f"cannot read {part!r} as an integer or a..b range")
        out.extend(v for v in values if v not in out)
    return tuple(out)


def parse_name_list(text: str) -> tuple[str, ...]:
    return tuple(p.strip().lower() for p in str(text).split(",") if p.strip())


@dataclass(frozen=True)
class ExperimentConfig:
    datasets: tuple[str, ...] = ("karate",)
    kinds: tuple[str, ...] = attrs.KINDS
    scenarios: tuple[int, ...] = (1, 2)
    reps: int = 100
    noise: tuple[int, ...] = DEFAULT_NOISE
    seed: int = 42
    restarts: int = 10
    max_iter: int = 100
    layout: str = "first"
    workers: int = 1
    out: Path | None = None

    def __post_init__(self):
        for name in self.datasets:
            if name not in BUILTIN:
                raise ConfigError(f"unknown dataset {name!r}; valid names: {', '.join(BUILTIN)}")
        for kind in self.kinds:
            if kind not in attrs.KINDS:
                raise ConfigError(f"unknown kind {kind!r}; valid kinds: {', '.join(attrs.KINDS)}")
        for s in self.scenarios:
            if s not in (1, 2):
                raise ConfigError(f"scenario must be 1 or 2, got {s}")
        if self.reps < 1:
            raise ConfigError("reps must be >= 1")
        if self.restarts < 1 or self.max_iter < 1:
            raise ConfigError("restarts and max_iter must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.layout not in attrs.LAYOUTS:
            raise ConfigError(f"unknown layout {self.layout!r}")
        if any(v < 0 for v in self.noise):
            raise ConfigError("noise levels must be >= 0")

    def cells(self) -> list[tuple[str, str, int, int]]:
        """Grid cells in output order; numerical kinds skip the second scenario."""
        grid = [
            (d, k, s, v)
            for d in self.datasets
            for s in self.scenarios
            for k in self.kinds
            if not (s == 2 and k == "numerical")
            for v in self.noise
        ]
        if not grid:
            raise ConfigError("no grid cells: check kinds, scenarios and noise levels")
        return grid

    @classmethod
    def from_mapping(cls, values: dict) -> "ExperimentConfig":
        """Build from string values as found in a config file or on the command line."""
        known = {f.name for f in fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            key = key.strip().lower().replace("-", "_")
            if key == "dataset":
                key = "datasets"
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
            if raw is None:
                continue
            if key in ("datasets", "kinds"):
                kwargs[key] = parse_name_list(raw)
            elif key in ("scenarios", "noise"):
                kwargs[key] = parse_int_list(raw)
            elif key in ("reps", "seed", "restarts", "max_iter", "workers"):
                try:
                    kwargs[key] = int(raw)
                except ValueError:
                    raise ConfigError(f"{key} must be an integer, got {raw!r}") from None
            elif key == "out":
                kwargs[key] = Path(raw)
            else:
                kwargs[key] = str(raw).strip()
        return cls(**kwargs)


def read_config_file(path) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from any tuple of printable parts."""
    digest = hashlib.blake2b("|".join(map(str, parts)).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


def run_repetition(
    truth: GroundTruth,
    kind: str,
    scenario: int,
    noise: int,
    seed: int,
    restarts: int = 10,
    max_iter: int = 100,
    layout: str = "first",
) -> float:
    table = attrs.generate(kind, truth, derive_seed(seed, "attributes"), layout)
    if scenario == 2:
        table = attrs.sort_to_true_class(table)
    if noise:
        table, _ = attrs.inject_noise(table, truth, attrs.NoiseSpec(noise, derive_seed(seed, "noise")))
    found = kmedoids(
        distance_matrix(table), truth.n, seed=derive_seed(seed, "kmedoids"),
        restarts=restarts, max_iter=max_iter,
    )
    return nmi(found.labels, np.asarray(truth.classes))


def run_cell(config: ExperimentConfig, kind: str, scenario: int, noise: int, dataset: str | None = None) -> RunReport:
    dataset = dataset or config.datasets[0]
    network, truth = builtin(dataset)
    if noise > truth.N:
        raise ConfigError(f"noise level {noise} exceeds the {truth.N} nodes of {dataset}")
    if scenario == 2 and kind == "numerical":
        raise ConfigError("numerical attributes have no second scenario")
    seeds, values = [], []
    for r in range(config.reps):
        seed = derive_seed(config.seed, dataset, kind, scenario, noise, r)
        seeds.append(seed)
        values.append(run_repetition(truth, kind, scenario, noise, seed,
                                     config.restarts, config.max_iter, config.layout))
    return RunReport(dataset, kind, scenario, noise, tuple(values), tuple(seeds))


def _run_cell_job(args):
    config, (dataset, kind, scenario, noise) = args
    return run_cell(config, kind, scenario, noise, dataset)


@dataclass
class SweepResult:
    config: ExperimentConfig
    reports: dict[tuple[str, str, int, int], RunReport] = field(default_factory=dict)

    def __len__(self):
        return len(self.reports)

    def get(self, dataset, kind, scenario, noise) -> RunReport:
        return self.reports[(dataset, kind, scenario, noise)]

    def results_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(RunReport.CSV_HEADER)
        for report in self.reports.values():
            w.writerow(report.csv_row())
        return buf.getvalue()

    def series(self, dataset: str, scenario: int) -> dict[str, list[tuple[int, float, float, float]]]:
        out: dict[str, list] = {}
        for (d, k, s, v), rep in self.reports.items():
            if d == dataset and s == scenario:
                out.setdefault(k, []).append((v, rep.mean, *rep.ci))
        return out

    def charts(self) -> dict[str, tuple[str, str]]:
        """``{stem: (svg, sidecar csv)}`` per (dataset, scenario)."""
        out = {}
        pairs = dict.fromkeys((d, s) for d, _, s, _ in self.reports)
        for dataset, scenario in pairs:
            series = self.series(dataset, scenario)
            title = f"Noisy {dataset}: scenario {scenario}"
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["kind", "noise", "mean_nmi", "ci_lo", "ci_hi"])
            for kind, pts in series.items():
                for v, mean, lo, hi in sorted(pts):
                    w.writerow([kind, v, f"{mean:.6f}", f"{lo:.6f}", f"{hi:.6f}"])
            out[f"{dataset}_scenario{scenario}"] = (line_chart(title, series), buf.getvalue())
        return out


def run_sweep(config: ExperimentConfig, write: bool = True) -> SweepResult:
    """Run every grid cell and, if ``config.out`` is set, write CSV, charts and tables."""
    cells = config.cells()
    for dataset in config.datasets:
        N = builtin(dataset)[1].N
        too_big = [v for v in config.noise if v > N]
        if too_big:
            raise ConfigError(f"noise levels {too_big} exceed the {N} nodes of {dataset}")
    out = Path(config.out) if (write and config.out is not None) else None
    if out is not None:
        try:
            out.mkdir(parents=True, exist_ok=True)
            probe = out / ".write-test"
            probe.write_text("")
            probe.unlink()
        except OSError as exc:
            raise ConfigError(f"cannot write to output directory {out}: {exc}") from exc
    result = SweepResult(config)
    jobs = [(config, cell) for cell in cells]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            reports = list(pool.map(_run_cell_job, jobs))
    else:
        reports = []
        for job in jobs:
            reports.append(_run_cell_job(job))
            log.info("%s %s s%d noise=%d mean=%.3f", *job[1], reports[-1].mean)
    for cell, report in zip(cells, reports):
        result.reports[cell] = report
    if out is not None:
        write_outputs(result, out)
    return result


def write_outputs(result: SweepResult, out: Path) -> None:
    (out / "results.csv").write_text(result.results_csv(), encoding="utf-8")
    for stem, (svg, sidecar) in result.charts().items():
        (out / f"{stem}.svg").write_text(svg, encoding="utf-8")
        (out / f"{stem}.csv").write_text(sidecar, encoding="utf-8")
    (out / "tables.txt").write_text(report_tables(result), encoding="utf-8")


def report_tables(result: SweepResult) -> str:
    """Noise-free cells as one table per (dataset, scenario): mean NMI and interval."""
    if not result.reports:
        raise ValueError("empty sweep result")
    lines = []
    pairs = dict.fromkeys((d, s) for d, _, s, v in result.reports if v == 0)
    if not pairs:
        return "no noise-free cells in this sweep\n"
    for dataset, scenario in pairs:
        lines.append(f"{dataset} (scenario {scenario})")
        rows = [
            (k.capitalize(), rep) for (d, k, s, v), rep in result.reports.items()
            if d == dataset and s == scenario and v == 0
        ]
        lines.append(f"  {'':<14} {'NMI-Average':>11}  Interval of Confidence")
        for name, rep in rows:
            lo, hi = rep.ci
            lines.append(f"  {name:<14} {rep.mean:>11.3f}  [{lo:.3f},{hi:.3f}]")
        lines.append("")
    return "\n".join(lines)
