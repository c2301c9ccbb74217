"""Synthetic node attributes drawn from ground-truth communities.

Every node of class ``i`` (out of ``n``) gets a *primary value* drawn
uniformly from ``[(i-1)/n, i/n)``:

* numerical: the primary value alone;
* probabilistic: the primary value in the first column (``layout="first"``,
  the default) or in column ``i`` (``layout="class"``), the remaining
  ``1 - x`` split at random over the other columns;
* evidential: the primary value on ``{C_i}``, the remaining ``1 - x`` split at
  random over the other subsets that contain ``C_i``.

Each table draws one block of uniforms with a fixed number of columns per
node, so a node's row depends only on the seed and its index, never on the
order rows are built in.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from evident.belief import MASS_TOL, FrameOfDiscernment, validate_masses
from evident.graphs import GroundTruth

KINDS = ("numerical", "probabilistic", "evidential")
LAYOUTS = ("first", "class")


def width(kind: str, n: int) -> int:
    if kind == "numerical":
        return 1
    if kind == "probabilistic":
        return n
    if kind == "evidential":
        return 1 << n
    raise ValueError(f"unknown attribute kind {kind!r}; expected one of {KINDS}")


@dataclass(frozen=True, eq=False)
class AttributeTable:
    kind: str
    n: int
    rows: np.ndarray = field(repr=False)
    scenario: int = 1
    seed: int | None = None
    classes: tuple[int, ...] = field(default=(), repr=False)
    noisy: tuple[int, ...] = ()
    layout: str = "first"

    def __post_init__(self):
        if self.layout not in LAYOUTS:
            raise ValueError(f"unknown layout {self.layout!r}; expected one of {LAYOUTS}")
        rows = np.array(self.rows, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != width(self.kind, self.n):
            raise ValueError(
                f"{self.kind} rows for n={self.n} need width {width(self.kind, self.n)}, got shape {rows.shape}"
            )
        if self.scenario not in (1, 2):
            raise ValueError(f"scenario must be 1 or 2, got {self.scenario}")
        if self.scenario == 2 and self.kind == "numerical":
            raise ValueError("numerical attributes have no second scenario")
        if self.classes and len(self.classes) != rows.shape[0]:
            raise ValueError(f"{len(self.classes)} classes for {rows.shape[0]} rows")
        check_rows(self.kind, rows)
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "classes", tuple(int(c) for c in self.classes))
        object.__setattr__(self, "noisy", tuple(sorted(int(v) for v in self.noisy)))

    @property
    def N(self) -> int:
        return self.rows.shape[0]

    @property
    def frame(self) -> FrameOfDiscernment:
        return FrameOfDiscernment.of_size(self.n)

    def __eq__(self, other):
        if not isinstance(other, AttributeTable):
            return NotImplemented
        return (
            (self.kind, self.n, self.scenario, self.seed, self.classes, self.noisy, self.layout)
            == (other.kind, other.n, other.scenario, other.seed, other.classes, other.noisy, other.layout)
            and np.array_equal(self.rows, other.rows)
        )

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["node", "kind", "scenario"] + [f"v{j}" for j in range(self.rows.shape[1])])
            for v, row in enumerate(self.rows):
                w.writerow([v, self.kind, self.scenario] + [repr(float(x)) for x in row])

    @classmethod
    def from_csv(cls, path, truth: GroundTruth | None = None) -> "AttributeTable":
        with open(path, newline="", encoding="utf-8") as fh:
            records = list(csv.DictReader(fh))
        if not records:
            raise ValueError(f"{path}: no rows")
        kind = records[0]["kind"]
        scenario = int(records[0]["scenario"])
        k = sum(1 for key in records[0] if key.startswith("v"))
        n = {"numerical": truth.n if truth else 1, "probabilistic": k}.get(kind, k.bit_length() - 1)
        nodes = [int(r["node"]) for r in records]
        if nodes != list(range(len(records))):
            raise ValueError(f"{path}: nodes must be listed as 0..N-1 in order")
        rows = [[float(r[f"v{j}"]) for j in range(k)] for r in records]
        return cls(kind, n, np.array(rows), scenario, None, truth.classes if truth else ())


def check_rows(kind: str, rows: np.ndarray, tol: float = MASS_TOL) -> None:
    """Raise ``ValueError`` if any row breaks the invariant of its kind."""
    if not np.all(np.isfinite(rows)):
        raise ValueError("attribute values must be finite")
    if kind == "numerical":
        if np.any((rows < 0) | (rows > 1)):
            raise ValueError("numerical attributes must lie in [0, 1]")
    elif kind == "probabilistic":
        if np.any(rows < 0):
            raise ValueError("negative probability")
        bad = np.abs(rows.sum(axis=1) - 1) > tol
        if np.any(bad):
            raise ValueError(f"probability rows {np.flatnonzero(bad)[:5].tolist()} do not sum to 1")
    elif kind == "evidential":
        validate_masses(rows, tol=tol)
    else:
        raise ValueError(f"unknown attribute kind {kind!r}")


def class_interval(i: int, n: int) -> tuple[float, float]:
    """Half-open interval ``[(i-1)/n, i/n)`` reserved for class ``i``."""
    if n < 1 or not 1 <= i <= n:
        raise ValueError(f"class index {i} outside 1..{n}")
    return (i - 1) / n, i / n


def uniform_block(seed: int, N: int, width: int) -> np.ndarray:
    """``N x width`` uniforms in [0, 1); row ``v`` only depends on ``seed``, ``v`` and ``width``."""
    return np.random.default_rng(np.random.SeedSequence(seed)).random((N, width))


def _n_other(kind: str, n: int) -> int:
    if kind == "numerical":
        return 0
    return n - 1 if kind == "probabilistic" else (1 << (n - 1)) - 1


def _draws_per_row(kind: str, n: int) -> int:
    # primary value, remainder values, then one sort key per remainder value
    return 1 + 2 * _n_other(kind, n)


def _primary(u: float, c: int, n: int) -> float:
    lo, hi = class_interval(c, n)
    return lo + u * (hi - lo)


def _outside(u: float, c: int, n: int) -> float:
    """Map ``u`` uniformly onto ``[0, 1)`` minus the interval of class ``c``."""
    if n < 2:
        raise ValueError("with a single class there is no value outside its interval")
    lo, hi = class_interval(c, n)
    x = u * (1.0 - (hi - lo))
    return x if x < lo else x + (hi - lo)


def _split_remainder(total: float, raw: np.ndarray) -> np.ndarray:
    raw = np.asarray(raw, dtype=float)
    if raw.size == 0:
        return raw
    s = raw.sum()
    if s > 0:
        return raw * (total / s)
    return np.full(raw.size, total / raw.size)


def probabilistic_row(n: int, c: int, x: float, raw: Sequence[float], layout: str = "first") -> np.ndarray:
    """Row with ``x`` in its anchor column and ``raw`` rescaled onto the others.

    The anchor is column 0 for ``layout="first"`` and column ``c - 1`` for
    ``layout="class"``. ``raw`` fills the remaining columns in ascending
    order; shuffling is the caller's job. With one class the row is ``(1,)``.
    """
    row = np.zeros(n)
    anchor = 0 if layout == "first" else c - 1
    others = [j for j in range(n) if j != anchor]
    if not others:
        row[anchor] = 1.0
        return row
    row[anchor] = x
    row[others] = _split_remainder(1.0 - x, raw)
    return row


def evidential_row(frame: FrameOfDiscernment, c: int, x: float, raw: Sequence[float]) -> np.ndarray:
    """Masses with ``x`` on ``{C_c}`` and ``raw`` rescaled onto its strict supersets.

    ``raw`` follows the ascending bitmask order of the supersets.
    """
    row = np.zeros(frame.size)
    single = frame.singleton(c)
    others = [a for a in frame.supersets(c) if a != single]
    if not others:
        row[single] = 1.0
        return row
    row[single] = x
    row[others] = _split_remainder(1.0 - x, raw)
    return row


def _row(kind, frame, c, x, rest, layout="first") -> np.ndarray:
    """Row of the given kind around primary value ``x``; ``rest`` holds the other draws."""
    if kind == "numerical":
        return np.array([x])
    m = _n_other(kind, frame.n)
    raw = (1.0 - x) * rest[:m]
    raw = raw[np.argsort(rest[m:2 * m], kind="stable")]
    if kind == "probabilistic":
        return probabilistic_row(frame.n, c, x, raw, layout)
    return evidential_row(frame, c, x, raw)


def generate(kind: str, truth: GroundTruth, seed: int, layout: str = "first") -> AttributeTable:
    """First-scenario table of the given kind. ``layout`` only affects probabilistic rows."""
    frame = FrameOfDiscernment.of_size(truth.n)
    width(kind, truth.n)
    U = uniform_block(seed, truth.N, _draws_per_row(kind, truth.n))
    rows = [
        _row(kind, frame, c, _primary(U[v, 0], c, truth.n), U[v, 1:], layout)
        for v, c in enumerate(truth.classes)
    ]
    return AttributeTable(kind, truth.n, np.array(rows), 1, seed, truth.classes, layout=layout)


def gen_numerical(truth: GroundTruth, seed: int) -> AttributeTable:
    return generate("numerical", truth, seed)


def gen_probabilistic(truth: GroundTruth, seed: int, layout: str = "first") -> AttributeTable:
    return generate("probabilistic", truth, seed, layout)


def gen_evidential(truth: GroundTruth, seed: int) -> AttributeTable:
    return generate("evidential", truth, seed)


def eligible_positions(kind: str, n: int, c: int) -> list[int]:
    """Columns competing for the largest value of a class-``c`` row."""
    if kind == "probabilistic":
        return list(range(n))
    if kind == "evidential":
        return FrameOfDiscernment.of_size(n).supersets(c)
    raise ValueError("the second scenario does not apply to numerical attributes")


def true_position(kind: str, c: int) -> int:
    return c - 1 if kind == "probabilistic" else 1 << (c - 1)


def sort_to_true_class(table: AttributeTable) -> AttributeTable:
    """Swap each row's largest eligible value onto the node's true class.

    Only the two swapped entries move, so the multiset of values is kept.
    """
    if table.kind == "numerical":
        raise ValueError("the second scenario does not apply to numerical attributes")
    if not table.classes:
        raise ValueError("table carries no ground-truth classes")
    rows = table.rows.copy()
    for v, c in enumerate(table.classes):
        cols = eligible_positions(table.kind, table.n, c)
        target = true_position(table.kind, c)
        best = cols[int(np.argmax(rows[v, cols]))]
        if rows[v, best] > rows[v, target]:
            rows[v, [target, best]] = rows[v, [best, target]]
    return replace(table, rows=rows, scenario=2)


@dataclass(frozen=True)
class NoiseSpec:
    count: int
    seed: int

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"noise count must be >= 0, got {self.count}")


def inject_noise(
    table: AttributeTable, truth: GroundTruth, spec: NoiseSpec
) -> tuple[AttributeTable, list[int]]:
    """Regenerate ``spec.count`` random rows with the primary value off-class.

    The rows are rebuilt by the table's own generator, except that the
    primary value is drawn from ``[0, 1)`` outside the node's class interval.
    Noisy rows are never re-sorted, even on a second-scenario table.
    """
    if truth.N != table.N:
        raise ValueError(f"ground truth has {truth.N} nodes, table {table.N}")
    if spec.count > table.N:
        raise ValueError(f"cannot perturb {spec.count} of {table.N} nodes")
    if spec.count == 0:
        return table, []
    frame = FrameOfDiscernment.of_size(table.n)
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    nodes = sorted(int(v) for v in rng.choice(table.N, size=spec.count, replace=False))
    U = rng.random((table.N, _draws_per_row(table.kind, table.n)))
    rows = table.rows.copy()
    for v in nodes:
        c = truth.classes[v]
        rows[v] = _row(table.kind, frame, c, _outside(U[v, 0], c, table.n), U[v, 1:], table.layout)
    noisy = sorted(set(table.noisy) | set(nodes))
    return replace(table, rows=rows, noisy=tuple(noisy)), nodes
