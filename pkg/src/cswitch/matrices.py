"""Scalar fields and the small dense-matrix kernel.

Matrices are immutable row-major tuples of tuples.  Two scalar fields are
supported: exact rationals (``fractions.Fraction``) and IEEE doubles.  All
decision procedures in this package reduce to zero tests, so the rational
kernel never rounds; float helpers delegate to numpy.

Python ints are accepted as entries of either field (0 and 1 produced by
arithmetic identities stay ints); they compare and combine exactly with both.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, EigenFailure, FieldMismatch


class Field(str, Enum):
    """Scalar field of a system: exact rationals or IEEE doubles."""

    RATIONAL = "rational"
    FLOAT = "float"


Scalar = Fraction | float | int
Matrix = tuple[tuple[Scalar, ...], ...]
Vector = tuple[Scalar, ...]


def coerce_scalar(x, field: Field) -> Scalar:
    if field is Field.RATIONAL:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise FieldMismatch(f"non-exact entry {x!r} in a rational matrix")
    if isinstance(x, (int, float)):
        return float(x)
    raise FieldMismatch(f"entry {x!r} is not a float")


def as_matrix(rows: Iterable[Iterable], field: Field) -> Matrix:
    """Freeze ``rows`` into a matrix, coercing entries into ``field``."""
    out = tuple(tuple(coerce_scalar(x, field) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionMismatch("ragged rows")
    return out


def require_square(m: Matrix, n: int | None = None) -> int:
    rows = len(m)
    if rows == 0 or any(len(r) != rows for r in m):
        raise DimensionMismatch("matrix is not square")
    if n is not None and rows != n:
        raise DimensionMismatch(f"expected a {n}x{n} matrix, got {rows}x{len(m[0])}")
    return rows


def identity(n: int, field: Field) -> Matrix:
    one = Fraction(1) if field is Field.RATIONAL else 1.0
    zero = Fraction(0) if field is Field.RATIONAL else 0.0
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int, field: Field) -> Matrix:
    zero = Fraction(0) if field is Field.RATIONAL else 0.0
    return tuple((zero,) * cols for _ in range(rows))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Product a @ b.  Zero entries of ``a`` are skipped, which makes the
    block-sparse matrices produced by the Kronecker lift cheap to multiply."""
    inner = len(b)
    if a and len(a[0]) != inner:
        raise DimensionMismatch("inner dimensions differ")
    cols = len(b[0]) if b else 0
    out = []
    for arow in a:
        acc = [0] * cols
        for k in range(inner):
            x = arow[k]
            if x == 0:
                continue
            brow = b[k]
            for j in range(cols):
                y = brow[j]
                if y != 0:
                    acc[j] += x * y
        out.append(tuple(acc))
    return tuple(out)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b) or (a and len(a[0]) != len(b[0])):
        raise DimensionMismatch("shapes differ")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: Scalar, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else a


def mat_vec(a: Matrix, v: Sequence[Scalar]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v) if x != 0) for row in a)


def vec(m: Matrix) -> Vector:
    """Row-major flattening; inverse of :func:`unvec`."""
    return tuple(x for row in m for x in row)


def unvec(v: Sequence[Scalar], rows: int, cols: int) -> Matrix:
    if len(v) != rows * cols:
        raise DimensionMismatch("vector length does not match the shape")
    return tuple(tuple(v[i * cols + j] for j in range(cols)) for i in range(rows))


def is_zero_matrix(m: Matrix, tol: float = 0.0) -> bool:
    if tol == 0.0:
        return all(x == 0 for row in m for x in row)
    return all(abs(x) <= tol for row in m for x in row)


def max_abs(m: Matrix) -> float:
    return max((abs(x) for row in m for x in row), default=0.0)


def trace(m: Matrix) -> Scalar:
    return sum(m[i][i] for i in range(len(m)))


def to_numpy(m: Matrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m], dtype=float)


def spectral_norm(m: Matrix) -> float:
    a = to_numpy(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


# ---------------------------------------------------------------------------
# Exact polynomial helpers (characteristic polynomials and rational roots).
# Coefficient lists are ascending: p(x) = c[0] + c[1] x + ... + c[d] x^d.
# ---------------------------------------------------------------------------


def charpoly(m: Matrix) -> list[Fraction]:
    """Monic characteristic polynomial det(xI - m), exact over the rationals.

    Faddeev-LeVerrier recurrence; all arithmetic stays in Fraction so the
    result is exact for rational input.
    """
    n = require_square(m)
    a = tuple(tuple(Fraction(x) for x in row) for row in m)
    ident = identity(n, Field.RATIONAL)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    nmat = ident
    for k in range(1, n + 1):
        nmat = mat_mul(a, nmat)
        coeffs[n - k] = -Fraction(trace(nmat), k)
        if k < n:
            nmat = mat_add(nmat, mat_scale(coeffs[n - k], ident))
    return coeffs


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs: Sequence[Fraction]) -> list[Fraction]:
    return [c * k for k, c in enumerate(coeffs)][1:] or [Fraction(0)]


def poly_deflate(coeffs: Sequence[Fraction], root: Fraction) -> list[Fraction]:
    """Divide by (x - root); the root must be exact."""
    out: list[Fraction] = []
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * root + c
        out.append(acc)
    rem = out.pop()
    if rem != 0:
        raise ValueError("not a root")
    out.reverse()
    return [Fraction(c) for c in out]


def poly_gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd over the rationals (Euclid with exact long division)."""

    def strip(c: list[Fraction]) -> list[Fraction]:
        while c and c[-1] == 0:
            c.pop()
        return c

    a, b = strip(list(p)), strip(list(q))
    while b:
        r = list(a)
        while len(r) >= len(b):
            factor = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] -= factor * c
            r.pop()
            strip(r)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def is_squarefree(coeffs: Sequence[Fraction]) -> bool:
    """True iff the polynomial has no repeated complex root."""
    g = poly_gcd(coeffs, poly_derivative(coeffs))
    return len(g) <= 1


def rational_roots(coeffs: Sequence[Fraction]) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicities, found exactly.

    Candidates come from the rational root theorem applied to the
    denominator-cleared integer polynomial; each confirmed root is deflated
    out so multiplicities are exact.
    """
    work = [Fraction(c) for c in coeffs]
    while len(work) > 1 and work[-1] == 0:
        work.pop()
    if len(work) <= 1:
        return []
    roots: list[tuple[Fraction, int]] = []
    mult0 = 0
    while len(work) > 1 and work[0] == 0:
        work = work[1:]
        mult0 += 1
    if mult0:
        roots.append((Fraction(0), mult0))
    if len(work) <= 1:
        return roots
    # Candidates of any deflated factor are candidates of the zero-stripped
    # polynomial itself, so one candidate set covers every multiplicity.
    denlcm = math.lcm(*(c.denominator for c in work))
    ints = [int(c * denlcm) for c in work]
    lead, const = ints[-1], ints[0]
    cands = sorted(
        {s * Fraction(p, q) for p in _divisors(abs(const)) for q in _divisors(abs(lead)) for s in (1, -1)}
    )
    for cand in cands:
        mult = 0
        while len(work) > 1 and poly_eval(work, cand) == 0:
            work = poly_deflate(work, cand)
            mult += 1
        if mult:
            roots.append((cand, mult))
        if len(work) <= 1:
            break
    return roots


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    pn, pd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def eigenvalues_float(m: Matrix) -> np.ndarray:
    try:
        return np.linalg.eigvals(to_numpy(m))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - backend dependent
        raise EigenFailure(str(exc)) from exc


def spectral_radius(m: Matrix, field: Field) -> float:
    """Largest eigenvalue magnitude.

    For rational matrices the magnitude is snapped to an exactly known
    rational root of the characteristic polynomial when the float estimate
    agrees with it to 1e-9; the self-loop bound rho(A) = 1 then comes out
    exactly 1.0 instead of 1.0 plus rounding noise.
    """
    if not m:
        return 0.0
    vals = eigenvalues_float(m)
    rho = float(max(abs(vals))) if vals.size else 0.0
    if field is Field.RATIONAL:
        exact = [abs(r) for r, _ in rational_roots(charpoly(m))]
        for mag in exact:
            if abs(rho - float(mag)) <= 1e-9 * max(1.0, rho):
                return float(mag)
    return rho
