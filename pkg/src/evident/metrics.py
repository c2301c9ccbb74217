"""Partition entropies, normalized mutual information and run summaries."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import numpy as np

Z_95 = 1.96


class NodeSetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Class id per node. Built from a sequence (nodes 0..N-1) or a mapping."""

    assignment: tuple[tuple[Hashable, Hashable], ...]

    @classmethod
    def of(cls, labels: "Partition | Sequence | Mapping | np.ndarray") -> "Partition":
        if isinstance(labels, Partition):
            return labels
        if isinstance(labels, Mapping):
            items = labels.items()
        else:
            items = enumerate(np.asarray(labels).tolist())
        return cls(tuple(sorted(items, key=lambda kv: repr(kv[0]))))

    def __post_init__(self):
        if not self.assignment:
            raise ValueError("a partition needs at least one node")
        nodes = [v for v, _ in self.assignment]
        if len(set(nodes)) != len(nodes):
            raise ValueError("a node appears twice in the partition")

    @property
    def nodes(self) -> tuple:
        return tuple(v for v, _ in self.assignment)

    @property
    def labels(self) -> tuple:
        return tuple(c for _, c in self.assignment)

    def proportions(self) -> np.ndarray:
        _, counts = np.unique(np.array([repr(c) for c in self.labels]), return_counts=True)
        return counts / counts.sum()

    def __len__(self):
        return len(self.assignment)


def _shannon(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-(p * np.log(p)).sum()) + 0.0


def entropy(P) -> float:
    """Shannon entropy of the class proportions, in nats."""
    return _shannon(Partition.of(P).proportions())


def _aligned(A, B) -> tuple[Partition, Partition]:
    A, B = Partition.of(A), Partition.of(B)
    if A.nodes != B.nodes:
        raise NodeSetMismatch(f"partitions cover different nodes ({len(A)} vs {len(B)})")
    return A, B


def contingency(A, B) -> np.ndarray:
    A, B = _aligned(A, B)
    _, a = np.unique(np.array([repr(c) for c in A.labels]), return_inverse=True)
    _, b = np.unique(np.array([repr(c) for c in B.labels]), return_inverse=True)
    table = np.zeros((a.max() + 1, b.max() + 1))
    np.add.at(table, (a, b), 1)
    return table


def joint_entropy(A, B) -> float:
    table = contingency(A, B)
    return _shannon(table.ravel() / table.sum())


def mutual_information(A, B) -> float:
    A, B = _aligned(A, B)
    return entropy(A) + entropy(B) - joint_entropy(A, B)


def nmi(A, B, variant: str = "standard") -> float:
    """Normalized mutual information between two partitions of one node set.

    ``standard`` is ``2 I(A;B) / (H(A) + H(B))``: 1 for identical partitions
    up to relabelling, 0 for independent ones, and 1 by convention when both
    sides have a single class. ``paper_literal`` is ``(H(A) + H(B)) / H(A,B)``,
    which gives 2 for identical partitions; it is kept only for comparison.
    """
    A, B = _aligned(A, B)
    ha, hb, hab = entropy(A), entropy(B), joint_entropy(A, B)
    if variant == "paper_literal":
        if hab == 0:
            raise ZeroDivisionError("joint entropy is 0; literal NMI undefined")
        return (ha + hb) / hab
    if variant != "standard":
        raise ValueError(f"unknown NMI variant {variant!r}")
    if ha + hb == 0:
        return 1.0
    value = 2.0 * (ha + hb - hab) / (ha + hb)
    return min(max(value, 0.0), 1.0)


def confidence_interval(values: Sequence[float], level: float = 0.95) -> tuple[float, float]:
    """``mean -/+ 1.96 * s`` with ``s`` the sample standard deviation, clipped to [0, 1].

    This is a spread of single runs, not an interval on the mean.
    """
    if level != 0.95:
        raise ValueError("only the 95% level is supported")
    x = np.asarray(values, dtype=float)
    if x.size < 2:
        raise ValueError("need at least 2 values for a confidence interval")
    mean = float(x.mean())
    if np.all(x == x[0]):
        return mean, mean
    half = Z_95 * float(x.std(ddof=1))
    return max(mean - half, 0.0), min(mean + half, 1.0)


@dataclass(frozen=True)
class RunReport:
    dataset: str
    kind: str
    scenario: int
    noise: int
    values: tuple[float, ...] = field(repr=False)
    seeds: tuple[int, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if not self.values:
            raise ValueError("a run report needs at least one NMI value")
        for v in self.values:
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"NMI value {v} outside [0, 1]")

    @property
    def R(self) -> int:
        return len(self.values)

    @property
    def mean(self) -> float:
        return float(math.fsum(self.values) / len(self.values))

    @property
    def ci(self) -> tuple[float, float]:
        if self.R < 2:
            return self.mean, self.mean
        lo, hi = confidence_interval(self.values)
        # fsum mean and numpy mean can differ in the last bit
        return min(lo, self.mean), max(hi, self.mean)

    CSV_HEADER = ("dataset", "kind", "scenario", "noise", "R", "mean_nmi", "ci_lo", "ci_hi")

    def csv_row(self) -> list:
        lo, hi = self.ci
        return [self.dataset, self.kind, self.scenario, self.noise, self.R,
                f"{self.mean:.6f}", f"{lo:.6f}", f"{hi:.6f}"]
