"""Mass functions over a finite frame and the Jousselme distance between them.

Subsets of a frame with ``n`` classes are addressed by bitmask: bit ``b`` of
the index is set when class ``C_{b+1}`` belongs to the subset. Index 0 is the
empty set and ``2**n - 1`` is the whole frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_CLASSES = 16
MASS_TOL = 1e-9
# radicands down to this value are rounding noise, not a real negative form
RADICAND_TOL = 1e-12


class MassError(ValueError):
    """Raised when a vector of masses is not a valid mass function."""


class FrameMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FrameOfDiscernment:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("a frame needs at least one class")
        if len(labels) > MAX_CLASSES:
            raise ValueError(f"frames are capped at {MAX_CLASSES} classes, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate class labels in {labels}")

    @classmethod
    def of_size(cls, n: int) -> "FrameOfDiscernment":
        """Frame with labels ``C1..Cn``."""
        if n < 1:
            raise ValueError(f"a frame needs at least one class, got n={n}")
        return cls(tuple(f"C{i}" for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        """Number of subsets, ``2**n``."""
        return 1 << self.n

    @property
    def omega(self) -> int:
        return self.size - 1

    def subset(self, *classes: int) -> int:
        """Bitmask of the subset made of the given 1-based class indices."""
        index = 0
        for c in classes:
            if not 1 <= c <= self.n:
                raise ValueError(f"class index {c} outside 1..{self.n}")
            index |= 1 << (c - 1)
        return index

    def singleton(self, c: int) -> int:
        return self.subset(c)

    def members(self, index: int) -> tuple[int, ...]:
        self.check_index(index)
        return tuple(b + 1 for b in range(self.n) if index >> b & 1)

    def supersets(self, c: int) -> list[int]:
        """Ascending indices of all subsets containing class ``c``."""
        bit = self.singleton(c)
        return [a for a in range(self.size) if a & bit]

    def check_index(self, index: int) -> None:
        if not 0 <= index < self.size:
            raise ValueError(f"subset index {index} outside 0..{self.size - 1}")

    def describe(self, index: int) -> str:
        if index == 0:
            return "{}"
        if index == self.omega:
            return "Omega"
        return "{" + ",".join(self.labels[c - 1] for c in self.members(index)) + "}"


def validate_masses(masses: np.ndarray, size: int | None = None, tol: float = MASS_TOL) -> None:
    """Check a mass vector (or a stack of them along the last axis) in place."""
    masses = np.asarray(masses, dtype=float)
    if size is not None and masses.shape[-1] != size:
        raise MassError(f"expected {size} masses, got {masses.shape[-1]}")
    if not np.all(np.isfinite(masses)):
        raise MassError("masses must be finite")
    if np.any(masses < 0):
        raise MassError(f"negative mass: min={masses.min()!r}")
    if np.any(masses[..., 0] != 0):
        raise MassError("the empty set must carry zero mass")
    totals = masses.sum(axis=-1)
    bad = np.abs(totals - 1.0) > tol
    if np.any(bad):
        raise MassError(f"masses must sum to 1, got {np.atleast_1d(totals)[np.atleast_1d(bad)][0]!r}")


@dataclass(frozen=True, eq=False)
class MassFunction:
    frame: FrameOfDiscernment
    masses: np.ndarray = field(repr=False)

    def __post_init__(self):
        masses = np.array(self.masses, dtype=float)
        if masses.shape != (self.frame.size,):
            raise MassError(f"expected shape ({self.frame.size},), got {masses.shape}")
        validate_masses(masses)
        masses.setflags(write=False)
        object.__setattr__(self, "masses", masses)

    def __getitem__(self, index: int) -> float:
        return float(self.masses[index])

    def __eq__(self, other):
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and np.array_equal(self.masses, other.masses)

    def __repr__(self):
        parts = ", ".join(
            f"{self.frame.describe(a)}: {self.masses[a]:.4g}" for a in focal_elements(self)
        )
        return f"MassFunction({parts})"

    @classmethod
    def vacuous(cls, frame: FrameOfDiscernment) -> "MassFunction":
        return make_mass(frame, [(frame.omega, 1.0)])

    @classmethod
    def categorical(cls, frame: FrameOfDiscernment, c: int) -> "MassFunction":
        return make_mass(frame, [(frame.singleton(c), 1.0)])


def make_mass(frame: FrameOfDiscernment, assignments: Iterable[tuple[int, float]]) -> MassFunction:
    """Build a mass function from ``(subset index, mass)`` pairs.

    Repeated indices accumulate. Unassigned subsets get zero mass.
    """
    masses = np.zeros(frame.size)
    for index, value in assignments:
        frame.check_index(index)
        if value < 0:
            raise MassError(f"negative mass {value} on {frame.describe(index)}")
        if index == 0 and value > 0:
            raise MassError("the empty set must carry zero mass")
        masses[index] += value
    return MassFunction(frame, masses)


def focal_elements(m: MassFunction) -> list[int]:
    return [int(a) for a in np.flatnonzero(m.masses > 0)]


def is_consonant(m: MassFunction) -> bool:
    """True when the focal elements form a chain under inclusion."""
    # a chain sorted by cardinality must be nested pairwise along the order
    focal = sorted(focal_elements(m), key=lambda a: (bin(a).count("1"), a))
    return all(a & b == a for a, b in zip(focal, focal[1:]))


@dataclass(frozen=True, eq=False)
class JaccardMatrix:
    frame: FrameOfDiscernment
    entries: np.ndarray = field(repr=False)


@lru_cache(maxsize=None)
def jaccard_matrix(frame: FrameOfDiscernment) -> JaccardMatrix:
    """``|A & B| / |A | B|`` for every pair of subsets.

    The empty-set row and column are zero apart from the diagonal entry.
    Cached per frame; the returned array is read-only.
    """
    idx = np.arange(frame.size)
    inter = idx[:, None] & idx[None, :]
    union = idx[:, None] | idx[None, :]
    popcount = np.vectorize(lambda v: bin(int(v)).count("1"), otypes=[np.int64])
    num = popcount(inter).astype(float)
    den = popcount(union).astype(float)
    entries = np.divide(num, den, out=np.zeros_like(num), where=den > 0)
    entries[0, 0] = 1.0
    entries.setflags(write=False)
    return JaccardMatrix(frame, entries)


def _radicand_to_distance(q):
    q = np.asarray(q, dtype=float)
    if np.any(q < -RADICAND_TOL):
        raise ArithmeticError(f"negative quadratic form {q.min()!r}; Jaccard matrix not PSD?")
    return np.sqrt(np.clip(q, 0.0, None))


def jousselme_distance(m1: MassFunction, m2: MassFunction, D: JaccardMatrix | None = None) -> float:
    """``sqrt(0.5 * (m1 - m2)' D (m1 - m2))`` with ``D`` the Jaccard matrix."""
    if m1.frame != m2.frame:
        raise FrameMismatch(f"{m1.frame.labels} vs {m2.frame.labels}")
    if D is None:
        D = jaccard_matrix(m1.frame)
    elif D.frame != m1.frame:
        raise FrameMismatch(f"Jaccard matrix built for {D.frame.labels}, masses on {m1.frame.labels}")
    diff = m1.masses - m2.masses
    return float(_radicand_to_distance(0.5 * diff @ D.entries @ diff))


def pairwise_jousselme(masses: np.ndarray, D: JaccardMatrix) -> np.ndarray:
    """All pairwise Jousselme distances between the rows of ``masses``.

    Works on explicit differences rather than a Gram matrix, so identical
    rows give exactly 0 and the result is exactly symmetric.
    """
    M = np.asarray(masses, dtype=float)
    if M.ndim != 2 or M.shape[1] != D.frame.size:
        raise FrameMismatch(f"rows of length {M.shape[-1]} for a frame of size {D.frame.size}")
    diff = M[:, None, :] - M[None, :, :]
    q = 0.5 * np.einsum("ijs,st,ijt->ij", diff, D.entries, diff, optimize=True)
    return _radicand_to_distance(q)


def as_matrix(rows: Sequence[MassFunction]) -> np.ndarray:
    frames = {m.frame for m in rows}
    if len(frames) > 1:
        raise FrameMismatch("mass functions live on different frames")
    return np.stack([m.masses for m in rows])
