"""Pairwise distances between attribute rows and PAM k-medoids."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from evident.attributes import AttributeTable
from evident.belief import jaccard_matrix, pairwise_jousselme

# improvements smaller than this are rounding noise; stops SWAP from cycling
SWAP_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    values: np.ndarray = field(repr=False)
    kind: str = "custom"

    def __post_init__(self):
        d = np.array(self.values, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {d.shape}")
        if not np.all(np.isfinite(d)):
            raise ValueError("distances must be finite")
        if np.any(np.diag(d) != 0):
            raise ValueError("distance matrix diagonal must be exactly 0")
        if np.any(d < 0):
            raise ValueError("negative distance")
        if np.max(np.abs(d - d.T), initial=0.0) > 1e-12:
            raise ValueError("distance matrix is not symmetric")
        d.setflags(write=False)
        object.__setattr__(self, "values", d)

    @property
    def N(self) -> int:
        return self.values.shape[0]

    def to_csv(self, path) -> None:
        np.savetxt(path, self.values, delimiter=",", fmt="%.17g")


def distance_matrix(table: AttributeTable) -> DistanceMatrix:
    """Absolute difference, Euclidean, or Jousselme distance by attribute kind."""
    X = table.rows
    if table.kind == "numerical":
        d = np.abs(X[:, 0][:, None] - X[:, 0][None, :])
        label = "absolute"
    elif table.kind == "probabilistic":
        diff = X[:, None, :] - X[None, :, :]
        d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        label = "euclidean"
    elif table.kind == "evidential":
        d = pairwise_jousselme(X, jaccard_matrix(table.frame))
        label = "jousselme"
    else:
        raise ValueError(f"unknown attribute kind {table.kind!r}")
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d, label)


@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    labels: np.ndarray = field(repr=False)
    medoids: tuple[int, ...]
    objective: float
    history: tuple[float, ...] = field(default=(), repr=False)

    @property
    def k(self) -> int:
        return len(self.medoids)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["node", "cluster"])
            for v, c in enumerate(self.labels):
                w.writerow([v, int(c)])


def assign(D: np.ndarray, medoids) -> tuple[np.ndarray, float]:
    """Nearest-medoid labels (ties go to the lowest medoid id) and total cost.

    Cluster ids follow the ascending order of the medoid node ids. A medoid
    always lands in its own cluster, even when it duplicates another medoid.
    """
    meds = np.sort(np.asarray(medoids, dtype=int))
    # argmin returns the first minimum, i.e. the lowest medoid id
    labels = np.argmin(D[:, meds], axis=1)
    labels[meds] = np.arange(meds.size)
    cost = float(D[np.arange(D.shape[0]), meds[labels]].sum())
    return labels, cost


def objective(D: np.ndarray, medoids) -> float:
    return assign(D, medoids)[1]


def _pick(scores: np.ndarray, best: float, rng: np.random.Generator | None) -> int:
    """Index of the best score; exact-tie candidates chosen by ``rng``."""
    ties = np.flatnonzero(scores <= best + SWAP_TOL)
    if rng is None or ties.size == 1:
        return int(ties[0])
    return int(rng.choice(ties))


def build(D: np.ndarray, k: int, rng: np.random.Generator | None = None) -> list[int]:
    """Greedy PAM initialisation."""
    N = D.shape[0]
    totals = D.sum(axis=0)
    medoids = [_pick(totals, totals.min(), rng)]
    nearest = D[:, medoids[0]].copy()
    while len(medoids) < k:
        # gain of candidate h: sum_j max(nearest_j - d(j, h), 0)
        gain = np.maximum(nearest[:, None] - D, 0.0).sum(axis=0)
        gain[medoids] = -np.inf
        h = _pick(-gain, -gain.max(), rng)
        medoids.append(h)
        nearest = np.minimum(nearest, D[:, h])
    assert len(set(medoids)) == k or N < k
    return medoids


def swap(D: np.ndarray, medoids: list[int], max_iter: int, rng: np.random.Generator | None = None):
    """Apply the best (medoid, non-medoid) exchange while it lowers the cost.

    Returns the final medoids and the objective after every sweep, starting
    with the initial one.
    """
    N = D.shape[0]
    medoids = list(medoids)
    current = objective(D, medoids)
    history = [current]
    for _ in range(max_iter):
        Dm = D[:, medoids]
        order = np.argsort(Dm, axis=1, kind="stable")
        first = Dm[np.arange(N), order[:, 0]]
        second = Dm[np.arange(N), order[:, 1]] if len(medoids) > 1 else np.full(N, np.inf)
        # cost[i, h]: objective after replacing medoids[i] by node h
        cost = np.empty((len(medoids), N))
        for i in range(len(medoids)):
            kept = np.where(order[:, 0] == i, second, first)
            cost[i] = np.minimum(kept[:, None], D).sum(axis=0)
        cost[:, medoids] = np.inf
        best = cost.min()
        if not best < current - SWAP_TOL:
            break
        flat = _pick(cost.ravel(), best, rng)
        i, h = divmod(flat, N)
        medoids[i] = int(h)
        new = objective(D, medoids)
        assert new <= current + SWAP_TOL, "SWAP increased the objective"
        current = new
        history.append(current)
    return medoids, history


def kmedoids(
    D: DistanceMatrix | np.ndarray,
    k: int,
    seed: int = 0,
    restarts: int = 10,
    max_iter: int = 100,
) -> ClusterAssignment:
    """PAM (BUILD then SWAP), keeping the lowest-cost of ``restarts`` runs.

    The first run starts SWAP from BUILD; later runs start it from random
    medoids drawn from ``seed`` so they can escape a poor local optimum.
    Exact ties between candidate swaps are broken at random in those runs.
    """
    values = D.values if isinstance(D, DistanceMatrix) else np.asarray(D, dtype=float)
    N = values.shape[0]
    if not 1 <= k <= N:
        raise ValueError(f"need 1 <= k <= N, got k={k}, N={N}")
    if restarts < 1 or max_iter < 1:
        raise ValueError("restarts and max_iter must be positive")
    best = None
    for r, child in enumerate(np.random.SeedSequence(seed).spawn(restarts)):
        rng = np.random.default_rng(child)
        if r == 0:
            start = build(values, k)
        else:
            start = [int(v) for v in rng.choice(N, size=k, replace=False)]
        medoids, history = swap(values, start, max_iter, rng if r else None)
        labels, cost = assign(values, medoids)
        if best is None or cost < best.objective - SWAP_TOL:
            best = ClusterAssignment(labels, tuple(sorted(medoids)), cost, tuple(history))
    return best
