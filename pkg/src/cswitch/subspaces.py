"""Subspaces of R^n and spaces of matrices, over both scalar fields.

The rational side works on denominator-cleared integer rows with
fraction-free elimination and per-row gcd reduction; membership and
dimension are exact, and the frozen basis is the unique reduced row
echelon form.  The float side keeps an orthonormal basis and treats a
vector as contained when its residual after projection is below a
relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch
from .matrices import Field, Matrix, Scalar, Vector, unvec, vec

DEFAULT_TOL = 1e-9


def _integerize(v: Sequence[Scalar]) -> list[int]:
    fracs = [Fraction(x) for x in v]
    denlcm = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    return [int(f * denlcm) for f in fracs]


def _gcd_reduce(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = math.gcd(g, abs(x))
        if g == 1:
            break
    if g > 1:
        row = [x // g for x in row]
    return row


class RationalEchelon:
    """Mutable accumulator: integer rows in echelon form, exact arithmetic."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Sequence[Scalar]) -> list[int]:
        if len(v) != self.width:
            raise DimensionMismatch("vector width differs from the ambient dimension")
        w = _integerize(v)
        for row, p in zip(self.rows, self.pivots):
            if w[p] != 0:
                a, b = row[p], w[p]
                w = [x * a - y * b for x, y in zip(w, row)]
                w = _gcd_reduce(w)
        return w

    def add(self, v: Sequence[Scalar]) -> bool:
        """Insert ``v``; True iff the dimension grew."""
        w = self._reduce(v)
        pivot = next((i for i, x in enumerate(w) if x != 0), None)
        if pivot is None:
            return False
        if w[pivot] < 0:
            w = [-x for x in w]
        pos = next((i for i, p in enumerate(self.pivots) if p > pivot), len(self.pivots))
        self.rows.insert(pos, w)
        self.pivots.insert(pos, pivot)
        return True

    def contains(self, v: Sequence[Scalar]) -> bool:
        return all(x == 0 for x in self._reduce(v))

    def rref(self) -> tuple[tuple[Fraction, ...], ...]:
        """Unique reduced row echelon basis, pivots normalized to 1."""
        rows = [list(r) for r in self.rows]
        for i in range(len(rows)):
            p = self.pivots[i]
            for j in range(i):
                if rows[j][p] != 0:
                    a, b = rows[i][p], rows[j][p]
                    rows[j] = _gcd_reduce([x * a - y * b for x, y in zip(rows[j], rows[i])])
                    if rows[j][self.pivots[j]] < 0:
                        rows[j] = [-x for x in rows[j]]
        out = []
        for row, p in zip(rows, self.pivots):
            lead = Fraction(row[p])
            out.append(tuple(Fraction(x) / lead for x in row))
        return tuple(out)


class FloatEchelon:
    """Orthonormal-row accumulator with a relative containment tolerance."""

    def __init__(self, width: int, tol: float = DEFAULT_TOL):
        self.width = width
        self.tol = tol
        self.rows: list[np.ndarray] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _residual(self, v: Sequence[Scalar]) -> tuple[np.ndarray, float]:
        w = np.asarray([float(x) for x in v], dtype=float)
        if len(w) != self.width:
            raise DimensionMismatch("vector width differs from the ambient dimension")
        scale = float(np.linalg.norm(w))
        for _ in range(2):  # re-orthogonalize once for stability
            for b in self.rows:
                w = w - (b @ w) * b
        return w, scale

    def add(self, v: Sequence[Scalar]) -> bool:
        w, scale = self._residual(v)
        if scale == 0.0:
            return False
        r = float(np.linalg.norm(w))
        if r <= self.tol * scale:
            return False
        self.rows.append(w / r)
        return True

    def contains(self, v: Sequence[Scalar]) -> bool:
        w, scale = self._residual(v)
        if scale == 0.0:
            return True
        return float(np.linalg.norm(w)) <= self.tol * scale

    def basis(self) -> tuple[tuple[float, ...], ...]:
        return tuple(tuple(float(x) for x in row) for row in self.rows)


def make_echelon(width: int, field: Field, tol: float = DEFAULT_TOL):
    if field is Field.RATIONAL:
        return RationalEchelon(width)
    return FloatEchelon(width, tol)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of R^ambient_dim with a canonical frozen basis."""

    ambient_dim: int
    field: Field
    basis: tuple[Vector, ...]  # rational: reduced row echelon; float: orthonormal

    @classmethod
    def from_vectors(
        cls, vectors: Iterable[Sequence[Scalar]], ambient_dim: int, field: Field, tol: float = DEFAULT_TOL
    ) -> "Subspace":
        ech = make_echelon(ambient_dim, field, tol)
        for v in vectors:
            ech.add(v)
        return cls.from_echelon(ech, field)

    @classmethod
    def from_echelon(cls, ech, field: Field) -> "Subspace":
        basis = ech.rref() if field is Field.RATIONAL else ech.basis()
        return cls(ambient_dim=ech.width, field=field, basis=basis)

    @classmethod
    def zero(cls, ambient_dim: int, field: Field) -> "Subspace":
        return cls(ambient_dim=ambient_dim, field=field, basis=())

    @classmethod
    def full(cls, ambient_dim: int, field: Field) -> "Subspace":
        one = Fraction(1) if field is Field.RATIONAL else 1.0
        zero = Fraction(0) if field is Field.RATIONAL else 0.0
        rows = tuple(tuple(one if i == j else zero for j in range(ambient_dim)) for i in range(ambient_dim))
        return cls(ambient_dim=ambient_dim, field=field, basis=rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_trivial(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def is_proper_nontrivial(self) -> bool:
        return 0 < self.dim < self.ambient_dim

    def _echelon(self, tol: float = DEFAULT_TOL):
        ech = make_echelon(self.ambient_dim, self.field, tol)
        for row in self.basis:
            ech.add(row)
        return ech

    def contains(self, v: Sequence[Scalar], tol: float = DEFAULT_TOL) -> bool:
        return self._echelon(tol).contains(v)

    def contains_space(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        ech = self._echelon(tol)
        return all(ech.contains(row) for row in other.basis)

    def same_space(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        return self.contains_space(other, tol) and other.contains_space(self, tol)


@dataclass(frozen=True)
class MatrixSpace:
    """A linear span of n x n matrices, stored via row-major vectorization."""

    n: int
    field: Field
    basis: tuple[Matrix, ...]

    @classmethod
    def from_matrices(
        cls, mats: Iterable[Matrix], n: int, field: Field, tol: float = DEFAULT_TOL
    ) -> "MatrixSpace":
        ech = make_echelon(n * n, field, tol)
        for m in mats:
            ech.add(vec(m))
        rows = ech.rref() if field is Field.RATIONAL else ech.basis()
        return cls(n=n, field=field, basis=tuple(unvec(row, n, n) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_trivial(self) -> bool:
        return self.dim == 0

    def contains(self, m: Matrix, tol: float = DEFAULT_TOL) -> bool:
        ech = make_echelon(self.n * self.n, self.field, tol)
        for b in self.basis:
            ech.add(vec(b))
        return ech.contains(vec(m))


def rational_nullspace(m: Matrix) -> list[Vector]:
    """Exact kernel basis of a rational matrix (rows span the kernel)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    ech = RationalEchelon(cols)
    for row in m:
        ech.add(row)
    rref = ech.rref()
    pivots = []
    for row in rref:
        pivots.append(next(i for i, x in enumerate(row) if x != 0))
    free = [j for j in range(cols) if j not in pivots]
    basis: list[Vector] = []
    for j in free:
        v = [Fraction(0)] * cols
        v[j] = Fraction(1)
        for row, p in zip(rref, pivots):
            v[p] = -row[j]
        basis.append(tuple(v))
    return basis


def float_nullspace(a: np.ndarray, rel_tol: float | None = None) -> list[Vector]:
    """Kernel basis via SVD with the usual rank tolerance."""
    if a.size == 0:
        return []
    u, s, vt = np.linalg.svd(a)
    if rel_tol is None:
        rel_tol = max(a.shape) * np.finfo(float).eps
    cutoff = rel_tol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return [tuple(float(x) for x in row) for row in vt[rank:]]
