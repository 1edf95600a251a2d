"""Linear-algebra operations on matrix sets and automaton paths.

Everything here is a zero test in disguise: closures stop growing, spans
stay proper or fill up, a path product vanishes or does not.  Over the
rational field all of it is exact; over floats containment uses the
relative tolerance threaded through every entry point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, UnknownLabel
from .matrices import (
    Field,
    Matrix,
    charpoly,
    eigenvalues_float,
    identity,
    is_squarefree,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    poly_deflate,
    rational_roots,
    require_square,
    to_numpy,
    vec,
)
from .model import Path, SwitchedSystem
from .subspaces import (
    DEFAULT_TOL,
    MatrixSpace,
    Subspace,
    float_nullspace,
    make_echelon,
    rational_nullspace,
)


def path_product(system: SwitchedSystem, path: Path) -> Matrix:
    """Ordered product along a path: the later an edge fires, the further
    left its matrix sits, so ``e1 e2 .. eT`` yields A_eT ... A_e1."""
    for e in path.edges:
        if not (0 <= e.src < system.num_nodes and 0 <= e.dst < system.num_nodes):
            raise DimensionMismatch(f"edge {tuple(e)} is not inside the automaton")
        if e.label > system.num_modes:
            raise UnknownLabel(f"edge {tuple(e)} uses an unknown label")
    acc = system.matrix(path.edges[0].label)
    for e in path.edges[1:]:
        acc = mat_mul(system.matrix(e.label), acc)
    return acc


def subspace_closure(
    space: Subspace, mats: Sequence[Matrix], tol: float = DEFAULT_TOL
) -> Subspace:
    """Smallest subspace containing ``space`` and invariant under every
    matrix; grows by at most n dimensions, so the worklist terminates."""
    n = space.ambient_dim
    ech = make_echelon(n, space.field, tol)
    queue = []
    for row in space.basis:
        if ech.add(row):
            queue.append(row)
    while queue:
        x = queue.pop()
        for a in mats:
            y = mat_vec(a, x)
            if ech.add(y):
                queue.append(y)
    return Subspace.from_echelon(ech, space.field)


def is_invariant(space: Subspace, mats: Sequence[Matrix], tol: float = DEFAULT_TOL) -> bool:
    """A X subset of X for every matrix, exactly over rationals and within
    the relative tolerance over floats."""
    ech = space._echelon(tol)
    return all(ech.contains(mat_vec(a, x)) for x in space.basis for a in mats)


def _algebra_accumulate(
    mats: Sequence[Matrix], n: int, field: Field, tol: float = DEFAULT_TOL
) -> list[Matrix]:
    """Basis (as accumulated, not canonical) of the unital algebra generated
    by ``mats``: start from I and the set, multiply until no product adds a
    dimension.  The dimension is capped by n^2, which bounds the work."""
    ech = make_echelon(n * n, field, tol)
    basis: list[Matrix] = []
    for m in [identity(n, field), *mats]:
        require_square(m, n)
        if ech.add(vec(m)):
            basis.append(m)
    i = 0
    while i < len(basis):
        b = basis[i]
        j = 0
        while j < len(basis):
            c = basis[j]
            for p in (mat_mul(b, c), mat_mul(c, b)):
                if ech.add(vec(p)):
                    basis.append(p)
            j += 1
        i += 1
    return basis


def algebra_closure(mats: Sequence[Matrix], field: Field, tol: float = DEFAULT_TOL) -> MatrixSpace:
    """The unital matrix algebra spanned by the set, as a canonical space."""
    if not mats:
        raise DimensionMismatch("need at least one matrix")
    n = require_square(mats[0])
    basis = _algebra_accumulate(mats, n, field, tol)
    return MatrixSpace.from_matrices(basis, n, field, tol)


def span_fixpoint_all(
    system: SwitchedSystem, target: int, tol: float = DEFAULT_TOL
) -> dict[int, MatrixSpace]:
    """For every source u, the span of all products along nonempty paths
    u -> target.

    Kleene iteration on S_u = span({A_e : e = (u,target,s)} union
    {S_w . A_e : e = (u,w,s)}); each pass either grows some node span or
    reaches the fixpoint, and every span has dimension at most n^2, so the
    loop is polynomial.  The span is what boundedness checks need: invariance
    of a subspace under a product is linear in the product, so testing the
    span is equivalent to testing every (exponentially many) path product.
    """
    n = system.n
    field = system.field
    echs = {u: make_echelon(n * n, field, tol) for u in system.graph.nodes}
    bases: dict[int, list[Matrix]] = {u: [] for u in system.graph.nodes}
    changed = True
    while changed:
        changed = False
        for e in system.graph.edges:
            a = system.matrix(e.label)
            if e.dst == target:
                if echs[e.src].add(vec(a)):
                    bases[e.src].append(a)
                    changed = True
            for m in list(bases[e.dst]):
                p = mat_mul(m, a)
                if echs[e.src].add(vec(p)):
                    bases[e.src].append(p)
                    changed = True
    return {
        u: MatrixSpace.from_matrices(bases[u], n, field, tol) for u in system.graph.nodes
    }


def span_fixpoint(
    system: SwitchedSystem, source: int, target: int, tol: float = DEFAULT_TOL
) -> MatrixSpace:
    """Span of {A_p : p a nonempty path source -> target}, computed without
    enumerating paths."""
    if not (0 <= source < system.num_nodes and 0 <= target < system.num_nodes):
        raise DimensionMismatch("node index out of range")
    return span_fixpoint_all(system, target, tol)[source]


# ---------------------------------------------------------------------------
# Candidate minimal invariant subspaces of a single matrix.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    """A candidate minimal invariant subspace of one matrix.

    ``degenerate`` marks seeds that are unions of minimal subspaces
    (repeated eigenvalues, full-space planes); they may still close to a
    proper invariant subspace but cannot support a completeness argument.
    ``alg_mult`` is the algebraic multiplicity of the eigenvalue behind the
    seed (pairs count once).
    """

    space: Subspace
    degenerate: bool
    kind: str
    alg_mult: int


def has_simple_spectrum(m: Matrix, field: Field, tol: float = 1e-8) -> bool:
    """True iff all n eigenvalues are distinct; exact over the rationals
    (squarefree characteristic polynomial), gap-tested over floats."""
    if field is Field.RATIONAL:
        return is_squarefree(charpoly(m))
    vals = sorted(eigenvalues_float(m), key=lambda z: (z.real, z.imag))
    scale = max(1.0, max(abs(z) for z in vals))
    return all(abs(a - b) > tol * scale for a, b in zip(vals, vals[1:]))


def _shift(m: Matrix, lam: Fraction) -> Matrix:
    n = len(m)
    ident = identity(n, Field.RATIONAL)
    return mat_add(tuple(tuple(Fraction(x) for x in row) for row in m), mat_scale(-lam, ident))


def _rational_seeds(m: Matrix) -> tuple[list[Seed], list[complex]]:
    """Exact seeds for the rational eigenvalues plus, when the leftover
    factor is quadratic, its exact kernel plane.  Returns the seeds and the
    float eigenvalues still uncovered (handled by the float fallback)."""
    n = len(m)
    poly = charpoly(m)
    roots = rational_roots(poly)
    seeds: list[Seed] = []
    work = list(poly)
    for lam, mult in roots:
        kern = rational_nullspace(_shift(m, lam))
        space = Subspace.from_vectors(kern, n, Field.RATIONAL)
        geo = space.dim
        seeds.append(
            Seed(
                space=space,
                degenerate=(geo > 1 or geo == n),
                kind="rational-eigenspace" if geo > 1 else "rational-eigenline",
                alg_mult=mult,
            )
        )
        for _ in range(mult):
            work = poly_deflate(work, lam)
    leftover_deg = len(work) - 1
    uncovered: list[complex] = []
    if leftover_deg == 0:
        return seeds, uncovered
    if leftover_deg == 2:
        c0, c1 = work[0], work[1]
        # Kernel of m^2 + c1 m + c0 I is the exact invariant plane of the
        # irreducible quadratic factor.
        m_rat = tuple(tuple(Fraction(x) for x in row) for row in m)
        ident = identity(n, Field.RATIONAL)
        quad = mat_add(mat_add(mat_mul(m_rat, m_rat), mat_scale(c1, m_rat)), mat_scale(c0, ident))
        kern = rational_nullspace(quad)
        space = Subspace.from_vectors(kern, n, Field.RATIONAL)
        disc = c1 * c1 - 4 * c0
        if disc < 0:
            seeds.append(
                Seed(
                    space=space,
                    degenerate=(space.dim != 2 or space.dim == n),
                    kind="complex-pair",
                    alg_mult=1,
                )
            )
        else:
            # Two real irrational eigenlines live inside this exact plane;
            # the plane itself is invariant but not minimal.
            seeds.append(Seed(space=space, degenerate=True, kind="irrational-pair-box", alg_mult=1))
            root = math.sqrt(float(disc))
            for sign in (1.0, -1.0):
                uncovered.append(complex((-float(c1) + sign * root) / 2.0, 0.0))
    else:
        # Degree three or more without rational roots: fall back to float
        # eigenvalues for the remaining directions.
        covered = [complex(float(lam), 0.0) for lam, mult in roots for _ in range(mult)]
        for z in eigenvalues_float(m):
            if covered and min(abs(z - c) for c in covered) <= 1e-8 * max(1.0, abs(z)):
                covered.remove(min(covered, key=lambda c: abs(z - c)))
                continue
            uncovered.append(complex(z))
    return seeds, uncovered


def _float_seeds_for(m: Matrix, eigs: Sequence[complex], n: int, tol: float) -> list[Seed]:
    a = to_numpy(m)
    scale = max(1.0, max((abs(z) for z in eigs), default=1.0))
    gap = 1e-8 * scale
    clusters: list[list[complex]] = []
    for z in sorted(eigs, key=lambda z: (round(z.real, 12), round(z.imag, 12))):
        for cl in clusters:
            if abs(z - cl[0]) <= gap:
                cl.append(z)
                break
        else:
            clusters.append([z])
    seeds: list[Seed] = []
    done_pairs: list[complex] = []
    for cl in clusters:
        z = cl[0]
        mult = len(cl)
        if abs(z.imag) <= gap:
            shifted = a - z.real * np.eye(n)
            kern = float_nullspace(shifted)
            space = Subspace.from_vectors(kern, n, Field.FLOAT, tol)
            if space.dim == 0:
                continue  # numerically defective; the sphere layer covers it
            seeds.append(
                Seed(
                    space=space,
                    degenerate=(space.dim > 1 or space.dim == n),
                    kind="float-eigenline" if space.dim == 1 else "float-eigenspace",
                    alg_mult=mult,
                )
            )
        else:
            conj = complex(z.real, -abs(z.imag))
            if any(abs(conj - d) <= gap for d in done_pairs):
                continue
            done_pairs.append(complex(z.real, -abs(z.imag)))
            done_pairs.append(complex(z.real, abs(z.imag)))
            quad = a @ a - 2 * z.real * a + (abs(z) ** 2) * np.eye(n)
            kern = float_nullspace(quad)
            space = Subspace.from_vectors(kern, n, Field.FLOAT, tol)
            if space.dim == 0:
                continue
            seeds.append(
                Seed(
                    space=space,
                    degenerate=(space.dim > 2 or space.dim == n),
                    kind="float-pair-plane",
                    alg_mult=mult,
                )
            )
    return seeds


def minimal_invariant_seeds(m: Matrix, field: Field, tol: float = DEFAULT_TOL) -> list[Seed]:
    """Candidate minimal invariant subspaces of a single matrix.

    Rational matrices get exact eigenlines for every rational eigenvalue and
    an exact plane for a quadratic leftover factor; everything else comes
    from float eigenvalues (lines for simple real ones, planes for complex
    pairs).  Seeds are flagged degenerate when the eigenvalue repeats or the
    subspace is the full space, since those cannot witness minimality.
    """
    n = require_square(m)
    if field is Field.RATIONAL:
        seeds, uncovered = _rational_seeds(m)
        if uncovered:
            seeds.extend(_float_seeds_for(m, uncovered, n, tol))
        return seeds
    return _float_seeds_for(m, list(eigenvalues_float(m)), n, tol)


def column_space(m: Matrix, field: Field, tol: float = DEFAULT_TOL) -> Subspace:
    """Span of the columns (the image of the matrix)."""
    n = len(m)
    cols = [tuple(m[i][j] for i in range(n)) for j in range(len(m[0]) if m else 0)]
    return Subspace.from_vectors(cols, n, field, tol)
