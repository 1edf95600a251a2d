"""Dead-beat decisions: does every accepted switching product vanish?

A constrained system is dead-beat exactly when all products along paths of
length n * |V| are zero, and that is decided in polynomial time by Gramian
iterations: U_0 at every node is the identity, and

    U_k at node v  =  sum over edges (v, w, s) of  A_s^T U_{k-1}(w) A_s.

By induction U_k(v) = sum over length-k paths p starting at v of A_p^T A_p,
so U_k(v) = 0 iff every such product vanishes.  The system is dead-beat iff
every node's U is zero at step n * |V|; when it is not, a nonzero product
path of exactly that length is extracted greedily from the stored iterates
and returned as a machine-checkable witness.

Rational systems are decided exactly.  Float systems use a PSD trace test
(trace(U) <= tol * n) and the verdict records the tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceeded
from .graphs import count_paths
from .matrices import (
    Field,
    Matrix,
    identity,
    is_zero_matrix,
    mat_add,
    mat_mul,
    trace,
    transpose,
    zeros,
)
from .model import MatrixSet, Path, SwitchedSystem

DEFAULT_PSD_TOL = 1e-9


@dataclass(frozen=True)
class GurvitsState:
    """One step of the constrained iteration: k and the per-node Gramians."""

    step: int
    gramians: tuple[Matrix, ...]  # indexed by node


@dataclass(frozen=True)
class DeadbeatVerdict:
    is_deadbeat: bool
    horizon_bound: int  # n * |V|, the decision horizon
    minimal_horizon: int | None  # first step with all Gramians zero
    witness: Path | None  # nonzero-product path of length horizon_bound
    field: Field
    tolerance: float | None  # None when the verdict is exact


def _is_zero_gramian(u: Matrix, field: Field, tol: float) -> bool:
    if field is Field.RATIONAL:
        return is_zero_matrix(u)
    # PSD matrices vanish iff their trace does.
    return float(trace(u)) <= tol * max(1, len(u))


def gurvits_iterates(system: SwitchedSystem, steps: int, _unused_tol: float = 0.0) -> list[GurvitsState]:
    """The first ``steps`` Gramian states, state 0 included.

    Zero is absorbing: a node whose Gramian vanishes exactly keeps a zero
    Gramian forever after, because each term of the update is congruent to a
    previous Gramian.
    """
    n = system.n
    nodes = system.graph.nodes
    cur = tuple(identity(n, system.field) for _ in nodes)
    out = [GurvitsState(step=0, gramians=cur)]
    for k in range(1, steps + 1):
        nxt = []
        for v in nodes:
            acc = zeros(n, n, system.field)
            for e in system.graph.out_edges(v):
                a = system.matrix(e.label)
                u_prev = cur[e.dst]
                if is_zero_matrix(u_prev):
                    continue
                acc = mat_add(acc, mat_mul(mat_mul(transpose(a), u_prev), a))
            nxt.append(acc)
        cur = tuple(nxt)
        out.append(GurvitsState(step=k, gramians=cur))
    return out


def _witness_path(
    system: SwitchedSystem, states: Sequence[GurvitsState], start: int, tol: float
) -> Path:
    """Greedy extraction of a nonzero product path of length len(states)-1.

    Invariant: with B the product built so far and r steps remaining,
    B^T U_r(current) B is a nonzero sum of PSD terms, one per out-edge, so
    some edge keeps it nonzero; after the last step B^T U_0 B = B^T B != 0.
    """
    k = len(states) - 1
    edges = []
    cur = start
    prod = identity(system.n, system.field)
    for t in range(k):
        rem = k - t - 1
        best_edge = None
        best_prod = None
        best_score = None
        for e in system.graph.out_edges(cur):
            cand = mat_mul(system.matrix(e.label), prod)
            m = mat_mul(mat_mul(transpose(cand), states[rem].gramians[e.dst]), cand)
            score = trace(m)  # PSD, so the trace vanishes iff the matrix does
            if system.field is Field.RATIONAL:
                if score > 0:
                    best_edge, best_prod = e, cand
                    break
            else:
                if best_score is None or float(score) > best_score:
                    best_score, best_edge, best_prod = float(score), e, cand
        assert best_edge is not None, "invariant broken: no edge keeps the Gramian nonzero"
        edges.append(best_edge)
        cur = best_edge.dst
        prod = best_prod
    return Path(edges=tuple(edges))


def gurvits_constrained(system: SwitchedSystem, tol: float = DEFAULT_PSD_TOL) -> DeadbeatVerdict:
    """Decide dead-beat stability in polynomial time.

    Returns the verdict with the decision horizon n * |V|, the minimal
    horizon when dead-beat, and a nonzero-product witness path of exactly
    horizon length when not.
    """
    bound = system.n * system.num_nodes
    states = gurvits_iterates(system, bound)
    minimal = None
    for st in states:
        if st.step == 0:
            continue
        if all(_is_zero_gramian(u, system.field, tol) for u in st.gramians):
            minimal = st.step
            break
    tolerance = None if system.field is Field.RATIONAL else tol
    if minimal is not None:
        return DeadbeatVerdict(
            is_deadbeat=True,
            horizon_bound=bound,
            minimal_horizon=minimal,
            witness=None,
            field=system.field,
            tolerance=tolerance,
        )
    start = next(
        v
        for v in system.graph.nodes
        if not _is_zero_gramian(states[bound].gramians[v], system.field, tol)
    )
    witness = _witness_path(system, states, start, tol)
    return DeadbeatVerdict(
        is_deadbeat=False,
        horizon_bound=bound,
        minimal_horizon=None,
        witness=witness,
        field=system.field,
        tolerance=tolerance,
    )


def minimal_deadbeat_horizon(system: SwitchedSystem, tol: float = DEFAULT_PSD_TOL) -> int | None:
    """Smallest k with every length-k accepted product zero, None otherwise."""
    return gurvits_constrained(system, tol).minimal_horizon


def gurvits_arbitrary(mats: MatrixSet, tol: float = DEFAULT_PSD_TOL) -> bool:
    """Arbitrary-switching dead-beat test: U_k = sum_A A^T U_{k-1} A is zero
    at some k <= n iff the joint spectral radius of the set is zero."""
    n = mats.n
    u = identity(n, mats.field)
    for _ in range(n):
        if _is_zero_gramian(u, mats.field, tol):
            return True
        nxt = zeros(n, n, mats.field)
        for a in mats.matrices:
            nxt = mat_add(nxt, mat_mul(mat_mul(transpose(a), u), a))
        u = nxt
    return _is_zero_gramian(u, mats.field, tol)


def deadbeat_bruteforce(system: SwitchedSystem, cap: int = 1_000_000, tol: float = 0.0) -> bool:
    """Independent oracle: enumerate all paths of length n * |V| and test
    their products, pruning subtrees whose partial product is already zero
    (extensions of a zero product stay zero).

    Raises :class:`CapExceeded` with the required enumeration size when the
    path count at the horizon exceeds ``cap``.
    """
    bound = system.n * system.num_nodes
    total = count_paths(system.graph, bound)
    if total > cap:
        raise CapExceeded("brute-force enumeration too large", required=total)

    def rec(v: int, depth: int, prod: Matrix) -> bool:
        """True iff every completion of this prefix has zero product."""
        if is_zero_matrix(prod, tol):
            return True
        if depth == bound:
            return False
        for e in system.graph.out_edges(v):
            if not rec(e.dst, depth + 1, mat_mul(system.matrix(e.label), prod)):
                return False
        return True

    return all(rec(v, 0, identity(system.n, system.field)) for v in system.graph.nodes)
