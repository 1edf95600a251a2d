"""Common-invariant-subspace oracle for matrix sets.

A set is irreducible when no proper nontrivial subspace is invariant under
every member.  The oracle layers cheap certified tests over a numerical
last resort, and every Reducible verdict carries a witness subspace that is
re-verified before being returned:

1. algebra-full: the unital algebra spanned by the set has dimension n^2;
   no proper invariant subspace can exist (Burnside).  Certified.
2. structure shortcuts, both certified over the rationals:
   a cyclic shortcut (algebra dimension < n forces a proper invariant
   subspace through any vector) and a radical shortcut (a nonzero Jacobson
   radical, computed exactly as the kernel of the trace form, has a proper
   invariant image).
3. seed-closure: close candidate minimal invariant subspaces of single
   matrices (set members plus random algebra elements) under the whole set;
   a proper closure is a witness.  When some candidate has n distinct
   eigenvalues its seed list is complete, so all closures full certifies
   irreducibility.
4. sphere-minimization: minimize the n-th singular value of
   v -> [B_1 v ... B_d v] over the unit sphere (projected gradient, 50
   multistarts); a zero says some vector generates a proper subspace.
   If nothing is found the honest answer is unknown, with the achieved
   minimum reported.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .matrices import (
    Field,
    Matrix,
    as_matrix,
    mat_mul,
    require_square,
    to_numpy,
    trace,
)
from .linalg import (
    _algebra_accumulate,
    has_simple_spectrum,
    is_invariant,
    minimal_invariant_seeds,
    subspace_closure,
)
from .subspaces import DEFAULT_TOL, Subspace, make_echelon

SPHERE_ZERO_THRESHOLD = 1e-8
DEFAULT_SEED = 20260819


class IrreducibleStatus(str, Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    UNKNOWN = "unknown-numerical"


@dataclass(frozen=True)
class IrreducibilityVerdict:
    status: IrreducibleStatus
    method: str  # "algebra-full" | "seed-closure" | "sphere-minimization"
    witness: Subspace | None = None  # proper nontrivial invariant subspace
    tolerance: float | None = None  # set when floats took part in the verdict
    achieved_min: float | None = None  # sphere layer's best objective value
    notes: tuple[str, ...] = ()

    @property
    def is_irreducible(self) -> bool:
        return self.status is IrreducibleStatus.IRREDUCIBLE

    @property
    def is_reducible(self) -> bool:
        return self.status is IrreducibleStatus.REDUCIBLE


def _float_mats(mats: Sequence[Matrix]) -> list[Matrix]:
    return [tuple(tuple(float(x) for x in row) for row in m) for m in mats]


def _verify_witness(space: Subspace, mats: Sequence[Matrix], field: Field, tol: float) -> bool:
    if not space.is_proper_nontrivial:
        return False
    if space.field is Field.RATIONAL:
        return is_invariant(space, mats, tol)
    return is_invariant(space, _float_mats(mats), tol)


def _try_rationalize(space: Subspace, mats: Sequence[Matrix], tol: float) -> Subspace | None:
    """Continued-fraction promotion of a float witness to an exact one."""
    for limit in (1, 4, 16, 64, 1000, 10**5, 10**7):
        rows = [
            tuple(Fraction(x).limit_denominator(limit) for x in row) for row in space.basis
        ]
        cand = Subspace.from_vectors(rows, space.ambient_dim, Field.RATIONAL)
        if cand.dim == space.dim and is_invariant(cand, mats):
            return cand
    return None


def _finish_reducible(
    space: Subspace, mats: Sequence[Matrix], field: Field, tol: float, method: str, notes: tuple[str, ...] = ()
) -> IrreducibilityVerdict | None:
    """Re-verify, promote to exact coordinates when possible, and package."""
    if field is Field.RATIONAL and space.field is Field.FLOAT:
        exact = _try_rationalize(space, mats, tol)
        if exact is not None and exact.is_proper_nontrivial:
            return IrreducibilityVerdict(
                status=IrreducibleStatus.REDUCIBLE, method=method, witness=exact, tolerance=None, notes=notes
            )
        if _verify_witness(space, mats, field, tol):
            return IrreducibilityVerdict(
                status=IrreducibleStatus.REDUCIBLE,
                method=method,
                witness=space,
                tolerance=tol,
                notes=notes + ("witness has no exact rational coordinates at tested denominators",),
            )
        return None
    if _verify_witness(space, mats, field, tol):
        return IrreducibilityVerdict(
            status=IrreducibleStatus.REDUCIBLE,
            method=method,
            witness=space,
            tolerance=None if field is Field.RATIONAL else tol,
            notes=notes,
        )
    return None


def _unit_vector(n: int, k: int, field: Field) -> tuple:
    one = Fraction(1) if field is Field.RATIONAL else 1.0
    zero = Fraction(0) if field is Field.RATIONAL else 0.0
    return tuple(one if i == k else zero for i in range(n))


def _cyclic_witness(
    mats: Sequence[Matrix], n: int, field: Field, tol: float
) -> Subspace | None:
    """When the algebra has dimension < n, the orbit of any unit vector is a
    proper invariant subspace containing that vector."""
    for k in range(n):
        start = Subspace.from_vectors([_unit_vector(n, k, field)], n, field, tol)
        orbit = subspace_closure(start, mats, tol)
        if orbit.is_proper_nontrivial:
            return orbit
    return None


def _radical_image(
    algebra_basis: Sequence[Matrix], n: int, field: Field, tol: float
) -> Subspace | None:
    """Image of the Jacobson radical, a proper invariant subspace when the
    radical is nonzero.

    Over a characteristic-zero field the radical is the kernel of the trace
    form x -> (tr(x b_j))_j on the algebra; over the rationals that kernel
    is exact.  The sum of the images of radical elements is invariant
    (the radical is an ideal) and proper (the radical is nilpotent).
    """
    d = len(algebra_basis)
    gram_rows = []
    for bi in algebra_basis:
        gram_rows.append(tuple(trace(mat_mul(bi, bj)) for bj in algebra_basis))
    if field is Field.RATIONAL:
        from .subspaces import rational_nullspace

        kernel = rational_nullspace(tuple(gram_rows))
    else:
        from .subspaces import float_nullspace

        kernel = float_nullspace(np.array([[float(x) for x in row] for row in gram_rows]))
    if not kernel:
        return None
    ech = make_echelon(n, field, tol)
    for coeffs in kernel:
        rad = None
        for c, b in zip(coeffs, algebra_basis):
            if c == 0:
                continue
            term = tuple(tuple(c * x for x in row) for row in b)
            rad = term if rad is None else tuple(
                tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(rad, term)
            )
        if rad is None:
            continue
        for col in range(n):
            ech.add(tuple(rad[i][col] for i in range(n)))
    space = Subspace.from_echelon(ech, field)
    if space.is_proper_nontrivial:
        return space
    return None


def _random_algebra_elements(
    algebra_basis: Sequence[Matrix], n: int, field: Field, rng: random.Random, count: int
) -> list[Matrix]:
    out = []
    for _ in range(count):
        coeffs = [rng.randint(-3, 3) for _ in algebra_basis]
        if all(c == 0 for c in coeffs):
            coeffs[rng.randrange(len(coeffs))] = 1
        acc = None
        for c, b in zip(coeffs, algebra_basis):
            if c == 0:
                continue
            scalar = Fraction(c) if field is Field.RATIONAL else float(c)
            term = tuple(tuple(scalar * x for x in row) for row in b)
            acc = term if acc is None else tuple(
                tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(acc, term)
            )
        if acc is not None:
            out.append(as_matrix(acc, field))
    return out


def _sphere_minimize(
    mats: Sequence[Matrix], algebra_basis: Sequence[Matrix], n: int, rng: np.random.Generator,
    starts: int, max_iter: int = 400, conv_tol: float = 1e-12,
) -> tuple[float, np.ndarray | None]:
    """Multistart projected gradient for min over unit v of the n-th singular
    value of [B_1 v ... B_d v]; a zero objective means the algebra orbit of v
    is deficient, i.e. v lies in a proper invariant subspace."""
    bs = [to_numpy(b) for b in algebra_basis]
    scale = max(float(np.linalg.norm(b)) for b in bs) or 1.0
    bs = [b / scale for b in bs]

    def objective(v: np.ndarray):
        k = np.column_stack([b @ v for b in bs])
        u, s, vt = np.linalg.svd(k)
        return float(s[n - 1]), u[:, n - 1], vt[n - 1]

    best_val, best_v = math.inf, None
    for _ in range(starts):
        v = rng.standard_normal(n)
        v /= np.linalg.norm(v)
        f, u, w = objective(v)
        step = 0.5
        for _ in range(max_iter):
            grad_full = sum(w[i] * bs[i] for i in range(len(bs))).T @ u
            grad = grad_full - (grad_full @ v) * v
            gnorm = float(np.linalg.norm(grad))
            if gnorm < conv_tol or f < conv_tol:
                break
            moved = False
            while step > 1e-16:
                cand = v - step * grad
                cand /= np.linalg.norm(cand)
                f2, u2, w2 = objective(cand)
                if f2 < f - 1e-18:
                    v, f, u, w = cand, f2, u2, w2
                    step *= 1.3
                    moved = True
                    break
                step *= 0.5
            if not moved:
                break
        if f < best_val:
            best_val, best_v = f, v
    return best_val, best_v


def _scan_seeds(
    mats: Sequence[Matrix], candidates: Sequence[Matrix], field: Field, tol: float
) -> IrreducibilityVerdict | None:
    """Layer 2: close candidate minimal seeds under the whole set.

    Returns a Reducible verdict on the first verified proper closure; an
    Irreducible verdict when some candidate has all-distinct eigenvalues and
    every one of its seed closures fills the space (its seed list is then a
    complete list of minimal invariant subspaces, so a common invariant
    subspace would contain one of them and trap its closure); None when
    neither happens.
    """
    float_mats = _float_mats(mats)
    for b in candidates:
        seeds = minimal_invariant_seeds(b, field, tol)
        complete = has_simple_spectrum(b, field)
        float_assisted = False
        for sd in seeds:
            if sd.space.dim == 0:
                complete = False
                continue
            if sd.space.field is Field.RATIONAL:
                closure = subspace_closure(sd.space, mats, tol)
            else:
                float_assisted = True
                closure = subspace_closure(sd.space, float_mats, tol)
            if closure.is_proper_nontrivial:
                finished = _finish_reducible(closure, mats, field, tol, "seed-closure")
                if finished is not None:
                    return finished
                complete = False  # numerically unconfirmed escape, no certificate
        if complete:
            notes = ("float-assisted seeds",) if float_assisted else ()
            return IrreducibilityVerdict(
                status=IrreducibleStatus.IRREDUCIBLE,
                method="seed-closure",
                tolerance=tol if (float_assisted or field is Field.FLOAT) else None,
                notes=notes,
            )
    return None


def seed_closure_scan(
    mats: Sequence[Matrix],
    field: Field,
    *,
    tol: float = DEFAULT_TOL,
    random_elements: int = 8,
    seed: int = DEFAULT_SEED,
) -> IrreducibilityVerdict | None:
    """Run the seed-closure layer on its own (no algebra-full shortcut).

    Useful for consistency checks: on a set whose algebra is full this must
    never produce a Reducible verdict.
    """
    mats = [as_matrix(m, field) for m in mats]
    n = require_square(mats[0])
    rng = random.Random(seed)
    algebra_basis = _algebra_accumulate(mats, n, field, tol)
    candidates = list(mats) + _random_algebra_elements(algebra_basis, n, field, rng, random_elements)
    return _scan_seeds(mats, candidates, field, tol)


def is_irreducible_set(
    mats: Sequence[Matrix],
    field: Field,
    *,
    tol: float = DEFAULT_TOL,
    random_elements: int = 8,
    sphere_starts: int = 50,
    seed: int = DEFAULT_SEED,
) -> IrreducibilityVerdict:
    """Decide whether the set has a common proper invariant subspace.

    Certified answers whenever the layered search finds one; otherwise an
    honest unknown with the sphere layer's achieved minimum.  Deterministic
    for a fixed ``seed``.
    """
    mats = [as_matrix(m, field) for m in mats]
    n = require_square(mats[0])
    for m in mats:
        require_square(m, n)
    rng = random.Random(seed)

    algebra_basis = _algebra_accumulate(mats, n, field, tol)
    d = len(algebra_basis)
    if d == n * n:
        return IrreducibilityVerdict(
            status=IrreducibleStatus.IRREDUCIBLE,
            method="algebra-full",
            tolerance=None if field is Field.RATIONAL else tol,
        )

    if d < n:
        witness = _cyclic_witness(mats, n, field, tol)
        if witness is not None:
            finished = _finish_reducible(witness, mats, field, tol, "seed-closure", ("cyclic-orbit",))
            if finished is not None:
                return finished

    radical = _radical_image(algebra_basis, n, field, tol)
    if radical is not None:
        finished = _finish_reducible(radical, mats, field, tol, "seed-closure", ("radical-image",))
        if finished is not None:
            return finished

    candidates = list(mats) + _random_algebra_elements(algebra_basis, n, field, rng, random_elements)
    scan = _scan_seeds(mats, candidates, field, tol)
    if scan is not None:
        return scan

    nprng = np.random.default_rng(seed)
    best_val, best_v = _sphere_minimize(mats, algebra_basis, n, nprng, sphere_starts)
    if best_v is not None and best_val < SPHERE_ZERO_THRESHOLD:
        start = Subspace.from_vectors([tuple(float(x) for x in best_v)], n, Field.FLOAT, tol)
        closure = subspace_closure(start, _float_mats(mats), tol)
        if closure.is_proper_nontrivial:
            finished = _finish_reducible(closure, mats, field, tol, "sphere-minimization")
            if finished is not None:
                return IrreducibilityVerdict(
                    status=finished.status,
                    method=finished.method,
                    witness=finished.witness,
                    tolerance=finished.tolerance,
                    achieved_min=best_val,
                    notes=finished.notes,
                )
    return IrreducibilityVerdict(
        status=IrreducibleStatus.UNKNOWN,
        method="sphere-minimization",
        tolerance=tol,
        achieved_min=best_val if best_val is not math.inf else None,
    )
