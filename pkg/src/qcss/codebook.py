"""Phase-matrix construction.

A single complementary set is an N x N table of integer phases mod N with
entry k*s*pi(t) + m*t (mod N) at row s, column t. Collecting m = 0..N-1
for one family index k gives a complete complementary code; pooling all
k = 1..p0-1 gives the combined quasi-complementary set. Phases stay exact
integers here; complex values are materialized only by the correlation
engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

import numpy as np

from .errors import BadFamilyIndexError, OutOfRangeError, ShapeMismatchError
from .modarith import Factorization, Permutation, factorize

FamilyKind = Literal["ccc", "qcss"]


@dataclass(eq=False)
class PhaseMatrix:
    """One complementary set: N x N integer phases mod N."""

    n: int
    k: int
    m: int
    phases: np.ndarray

    def __post_init__(self) -> None:
        phases = np.ascontiguousarray(self.phases, dtype=np.int64)
        if phases.shape != (self.n, self.n):
            raise ShapeMismatchError(
                f"phases must be {self.n}x{self.n}, got {phases.shape}"
            )
        if phases.size and (phases.min() < 0 or phases.max() >= self.n):
            raise OutOfRangeError("phase entries must lie in [0, N)")
        phases.setflags(write=False)
        self.phases = phases

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhaseMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and self.m == other.m
            and np.array_equal(self.phases, other.phases)
        )


@dataclass(eq=False)
class SequenceFamily:
    """An ordered collection of phase matrices.

    kind "ccc":  the N sets sharing one family index k, m = 0..N-1 in order.
    kind "qcss": all N*(p0-1) sets, ordered by global index u = (k-1)*N + m.
    """

    n: int
    kind: FamilyKind
    members: tuple[PhaseMatrix, ...]
    k: int | None = None

    def __post_init__(self) -> None:
        if any(mat.n != self.n for mat in self.members):
            raise ShapeMismatchError("all members must share the same modulus")
        if self.kind == "ccc":
            if self.k is None:
                raise ShapeMismatchError("a ccc family needs its index k")
            expected = [(self.k, m) for m in range(self.n)]
        elif self.kind == "qcss":
            p0 = factorize(self.n).least_prime
            expected = [(k, m) for k in range(1, p0) for m in range(self.n)]
        else:
            raise ShapeMismatchError(f"unknown family kind {self.kind!r}")
        if [(mat.k, mat.m) for mat in self.members] != expected:
            raise ShapeMismatchError(f"members do not form a {self.kind} family in order")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[PhaseMatrix]:
        return iter(self.members)

    def __getitem__(self, u: int) -> PhaseMatrix:
        return self.members[u]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SequenceFamily):
            return NotImplemented
        return (
            self.n == other.n
            and self.kind == other.kind
            and self.k == other.k
            and len(self.members) == len(other.members)
            and all(a == b for a, b in zip(self.members, other.members))
        )


def _check_indices(k: int, m: int, n: int, p0: int) -> None:
    if not 1 <= k < p0:
        raise BadFamilyIndexError(f"family index k={k} outside [1, {p0})")
    if not 0 <= m < n:
        raise OutOfRangeError(f"set index m={m} outside [0, {n})")


def phase(k: int, m: int, s: int, t: int, perm: Permutation) -> int:
    """Single phase value k*s*pi(t) + m*t (mod N)."""
    n = perm.modulus
    p0 = factorize(n).least_prime
    _check_indices(k, m, n, p0)
    for name, val in (("s", s), ("t", t)):
        if not 0 <= val < n:
            raise OutOfRangeError(f"{name}={val} outside [0, {n})")
    return (k * s * perm.table[t] + m * t) % n


def build_set(k: int, m: int, perm: Permutation) -> PhaseMatrix:
    """Phase matrix of one complementary set, rows indexed by s."""
    n = perm.modulus
    p0 = factorize(n).least_prime
    _check_indices(k, m, n, p0)
    pi = np.asarray(perm.table, dtype=np.int64)
    s = np.arange(n, dtype=np.int64)[:, None]
    t = np.arange(n, dtype=np.int64)[None, :]
    return PhaseMatrix(n, k, m, (k * s * pi[None, :] + m * t) % n)


def build_ccc(k: int, perm: Permutation) -> SequenceFamily:
    """The complete complementary code for one family index: m = 0..N-1."""
    n = perm.modulus
    members = tuple(build_set(k, m, perm) for m in range(n))
    return SequenceFamily(n, "ccc", members, k=k)


def build_qcss(f: Factorization, perm: Permutation) -> SequenceFamily:
    """All p0-1 families pooled into one set of N*(p0-1) members.

    Member u = (k-1)*N + m; one shared permutation across every family.
    """
    if perm.modulus != f.n:
        raise ShapeMismatchError(
            f"permutation modulus {perm.modulus} does not match n = {f.n}"
        )
    members = tuple(
        build_set(k, m, perm) for k in range(1, f.least_prime) for m in range(f.n)
    )
    return SequenceFamily(f.n, "qcss", members)
