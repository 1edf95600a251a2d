"""Boundedness structure checks and CJSR bounds.

For a strongly connected system, boundedness of all trajectories at unit
growth rate follows from two verifiable hypotheses: linear connectivity
(every ordered node pair is joined by a path whose product is nonzero) and
an unavoidable set of irreducible nodes (every cycle passes through a node
whose cycle-product span is an irreducible set).  This module decides both,
reports them with diagnostics, and attaches numeric CJSR bounds.

Nodal checks run on cycle-product spans, never on enumerated cycles: a
subspace is invariant under every cycle matrix iff it is invariant under
their span, and the span is a polynomial-size fixpoint.  Enumeration is
kept behind a flag as a cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import BadSubspaceDim, CapExceeded, FieldMismatch, NotStronglyConnected
from .graphs import count_paths, is_unavoidable, simple_cycles_through, strongly_connected
from .irreducible import IrreducibilityVerdict, IrreducibleStatus, is_irreducible_set
from .linalg import path_product, span_fixpoint, span_fixpoint_all
from .matrices import Field, Matrix, identity, mat_mul, spectral_norm, spectral_radius, vec
from .model import SwitchedSystem
from .subspaces import DEFAULT_TOL, MatrixSpace, Subspace, make_echelon


def _require_strongly_connected(system: SwitchedSystem) -> None:
    if not strongly_connected(system.graph):
        raise NotStronglyConnected("this analysis needs a strongly connected automaton")


def node_irreducible(
    system: SwitchedSystem,
    v: int,
    *,
    tol: float = DEFAULT_TOL,
    via_enumeration: bool = False,
    **oracle_kwargs,
) -> IrreducibilityVerdict:
    """Irreducibility of the cycle products at node ``v``.

    The decision runs on a basis of span{A_c : c a nonempty cycle on v},
    normally the polynomial-time span fixpoint.  ``via_enumeration``
    switches to enumerating simple cycles on v up to length 1 + n(|V|-1)
    instead; any escape cycle shortens to one of these, so both routes
    decide the same predicate.  The enumeration route is exponential and
    exists as a cross-check oracle.
    """
    _require_strongly_connected(system)
    if via_enumeration:
        bound = 1 + system.n * (system.num_nodes - 1)
        mats = [path_product(system, c) for c in simple_cycles_through(system.graph, v, bound)]
        space = MatrixSpace.from_matrices(mats, system.n, system.field, tol)
    else:
        space = span_fixpoint_all(system, v, tol)[v]
    if space.is_trivial:
        # Every cycle product is zero, so every subspace is invariant; for
        # n == 1 there is no proper nonzero subspace and the set is
        # vacuously irreducible.
        if system.n == 1:
            return IrreducibilityVerdict(
                status=IrreducibleStatus.IRREDUCIBLE,
                method="algebra-full",
                tolerance=None if system.field is Field.RATIONAL else tol,
            )
        witness = Subspace.from_vectors(
            [tuple(1 if i == 0 else 0 for i in range(system.n))], system.n, system.field, tol
        )
        return IrreducibilityVerdict(
            status=IrreducibleStatus.REDUCIBLE,
            method="seed-closure",
            witness=witness,
            tolerance=None if system.field is Field.RATIONAL else tol,
            notes=("all cycle products at this node vanish",),
        )
    return is_irreducible_set(space.basis, system.field, tol=tol, **oracle_kwargs)


def node_verdicts(
    system: SwitchedSystem, *, tol: float = DEFAULT_TOL, **oracle_kwargs
) -> dict[int, IrreducibilityVerdict]:
    """node_irreducible for every node, sharing nothing but the system."""
    _require_strongly_connected(system)
    return {
        v: node_irreducible(system, v, tol=tol, **oracle_kwargs) for v in system.graph.nodes
    }


def mark_irreducible_nodes(
    system: SwitchedSystem, *, tol: float = DEFAULT_TOL, **oracle_kwargs
) -> frozenset:
    """Nodes whose cycle set is certified irreducible.

    Unknown-numerical nodes are excluded here (the structure report carries
    them separately), so the returned set is safe to use as a candidate
    unavoidable set.
    """
    verdicts = node_verdicts(system, tol=tol, **oracle_kwargs)
    return frozenset(v for v, vd in verdicts.items() if vd.status is IrreducibleStatus.IRREDUCIBLE)


def linearly_connected_pair(
    system: SwitchedSystem, v: int, w: int, tol: float = DEFAULT_TOL
) -> bool:
    """True iff some path v -> w has a nonzero product, decided on the span."""
    return not span_fixpoint(system, v, w, tol).is_trivial


def is_linearly_connected(system: SwitchedSystem, tol: float = DEFAULT_TOL) -> bool:
    return _linear_connectivity(system, tol)[0]


def _linear_connectivity(system: SwitchedSystem, tol: float) -> tuple[bool, tuple[int, int] | None]:
    for target in system.graph.nodes:
        spans = span_fixpoint_all(system, target, tol)
        for source in system.graph.nodes:
            if spans[source].is_trivial:
                return False, (source, target)
    return True, None


class CjsrBounds(NamedTuple):
    lower: float
    upper: float


def cjsr_bounds(
    system: SwitchedSystem, depth: int, cap: int = 200_000, tol: float = DEFAULT_TOL
) -> CjsrBounds:
    """Bracket the constrained joint spectral radius.

    lower: max over simple cycles c with |c| <= depth of rho(A_c)^(1/|c|)
    (cycle powers add nothing: rho(A_c^k)^(1/(k|c|)) equals the base value).
    upper: min over 1 <= t <= depth of max over length-t paths of the
    spectral norm ||A_p||^(1/t).  Rational products are formed exactly and
    converted to floats only for the final norm or radius.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    total = sum(count_paths(system.graph, t) for t in range(1, depth + 1))
    if total > cap:
        raise CapExceeded("path enumeration at this depth is too large", required=total)

    lower = 0.0
    for v in system.graph.nodes:
        for cyc in simple_cycles_through(system.graph, v, depth):
            rho = spectral_radius(path_product(system, cyc), system.field)
            val = rho ** (1.0 / cyc.length)
            if val > lower:
                lower = val

    upper = float("inf")
    ident = identity(system.n, system.field)
    best_at = [0.0] * (depth + 1)  # best_at[t] = max norm over length-t paths

    def walk(v: int, depth_now: int, prod: Matrix) -> None:
        if depth_now > 0:
            nm = spectral_norm(prod)
            if nm > best_at[depth_now]:
                best_at[depth_now] = nm
            if nm == 0.0:
                return  # extensions of a zero product stay zero
        if depth_now == depth:
            return
        for e in system.graph.out_edges(v):
            walk(e.dst, depth_now + 1, mat_mul(system.matrix(e.label), prod))

    for v in system.graph.nodes:
        walk(v, 0, ident)
    for t in range(1, depth + 1):
        upper = min(upper, best_at[t] ** (1.0 / t))
    return CjsrBounds(lower=lower, upper=upper)


@dataclass(frozen=True)
class StructureReport:
    """Outcome of the boundedness hypothesis checks plus CJSR bounds.

    ``conditions_hold`` is True/False when decided and None when unknown
    nodal verdicts could still flip the unavoidability check.
    """

    linearly_connected: bool
    failing_pair: tuple[int, int] | None
    irreducible_nodes: frozenset
    unknown_nodes: frozenset
    reducible_witnesses: dict
    unavoidable: bool
    all_nodes_irreducible: bool
    conditions_hold: bool | None
    statements: tuple[str, ...]
    cjsr_lower: float
    cjsr_upper: float
    depth: int


def boundedness_structure(
    system: SwitchedSystem,
    *,
    depth: int = 4,
    cap: int = 200_000,
    tol: float = DEFAULT_TOL,
    **oracle_kwargs,
) -> StructureReport:
    """Check the two boundedness hypotheses and report with diagnostics.

    When both hold the system is bounded if its CJSR equals 1, and its CJSR
    is positive; the report carries those statements plus numeric bounds.
    """
    _require_strongly_connected(system)
    lc, failing = _linear_connectivity(system, tol)
    verdicts = node_verdicts(system, tol=tol, **oracle_kwargs)
    irr = frozenset(v for v, vd in verdicts.items() if vd.status is IrreducibleStatus.IRREDUCIBLE)
    unk = frozenset(v for v, vd in verdicts.items() if vd.status is IrreducibleStatus.UNKNOWN)
    witnesses = {
        v: vd.witness for v, vd in verdicts.items() if vd.status is IrreducibleStatus.REDUCIBLE
    }
    unav = is_unavoidable(system.graph, irr)
    if lc and unav:
        holds: bool | None = True
    elif unk and lc and is_unavoidable(system.graph, irr | unk):
        holds = None  # unknown nodes could complete an unavoidable set
    else:
        holds = False
    statements: tuple[str, ...] = ()
    if holds:
        statements = (
            "bounded if the constrained joint spectral radius equals 1",
            "the constrained joint spectral radius is positive",
        )
    bounds = None
    while bounds is None:
        try:
            bounds = cjsr_bounds(system, depth, cap, tol)
        except CapExceeded:
            if depth == 1:
                raise
            depth -= 1  # structure verdicts stand; retry bounds shallower
    return StructureReport(
        linearly_connected=lc,
        failing_pair=failing,
        irreducible_nodes=irr,
        unknown_nodes=unk,
        reducible_witnesses=witnesses,
        unavoidable=unav,
        all_nodes_irreducible=(len(irr) == system.num_nodes),
        conditions_hold=holds,
        statements=statements,
        cjsr_lower=bounds.lower,
        cjsr_upper=bounds.upper,
        depth=depth,
    )


def _invariance_escape(space_basis, x_space: Subspace, tol: float) -> bool:
    """True iff some matrix of the span moves x_space outside itself."""
    ech = x_space._echelon(tol)
    for b in space_basis:
        for x in x_space.basis:
            y = tuple(sum(bi * xi for bi, xi in zip(row, x)) for row in b)
            if not ech.contains(y):
                return True
    return False


def escape_cycle_length(
    system: SwitchedSystem, v: int, space: Subspace, tol: float = DEFAULT_TOL
) -> int | None:
    """Length of a shortest cycle on ``v`` whose product moves ``space``
    outside itself; None when no cycle ever does.

    Searched length-by-length with per-length cycle-product spans (escaping
    is linear in the cycle matrix).  The search stops at 1 + n(|V|-1): when
    any escape cycle exists, one of at most that length does, so silence up
    to the bound proves there is none.
    """
    _require_strongly_connected(system)
    n = system.n
    if space.ambient_dim != n:
        raise BadSubspaceDim("subspace lives in the wrong ambient dimension")
    if not space.is_proper_nontrivial:
        raise BadSubspaceDim("need 0 < dim < n")
    if (space.field is Field.RATIONAL) != (system.field is Field.RATIONAL):
        raise FieldMismatch("subspace and system scalar fields differ")
    bound = 1 + n * (system.num_nodes - 1)
    # spans[u] = basis of span{A_p : p path u -> v of current length}
    spans: dict[int, list[Matrix]] = {u: [] for u in system.graph.nodes}
    init_echs = {u: make_echelon(n * n, system.field, tol) for u in system.graph.nodes}
    for e in system.graph.edges:
        if e.dst == v:
            a = system.matrix(e.label)
            if init_echs[e.src].add(vec(a)):
                spans[e.src].append(a)
    for length in range(1, bound + 1):
        if length > 1:
            nxt: dict[int, list[Matrix]] = {}
            for u in system.graph.nodes:
                ech = make_echelon(n * n, system.field, tol)
                basis: list[Matrix] = []
                for e in system.graph.out_edges(u):
                    a = system.matrix(e.label)
                    for m in spans[e.dst]:
                        p = mat_mul(m, a)
                        if ech.add(vec(p)):
                            basis.append(p)
                nxt[u] = basis
            spans = nxt
        if spans[v] and _invariance_escape(spans[v], space, tol):
            return length
    return None


def shortest_nonzero_path_length(
    system: SwitchedSystem, source: int, target: int, tol: float = DEFAULT_TOL
) -> int | None:
    """Length of a shortest path source -> target with nonzero product.

    Searched with forward per-length spans; a length has a nonzero product
    iff its span is nonzero.  The search stops at 1 + n(|V|-1), beyond the
    1 + n(|V|-2) that suffices for distinct nodes, so None certifies that
    no nonzero-product path exists at all.
    """
    n = system.n
    bound = 1 + n * (system.num_nodes - 1)
    spans: dict[int, list[Matrix]] = {u: [] for u in system.graph.nodes}
    init_echs = {u: make_echelon(n * n, system.field, tol) for u in system.graph.nodes}
    for e in system.graph.edges:
        if e.src == source:
            a = system.matrix(e.label)
            if init_echs[e.dst].add(vec(a)):
                spans[e.dst].append(a)
    for length in range(1, bound + 1):
        if length > 1:
            nxt: dict[int, list[Matrix]] = {u: [] for u in system.graph.nodes}
            echs = {u: make_echelon(n * n, system.field, tol) for u in system.graph.nodes}
            for e in system.graph.edges:
                a = system.matrix(e.label)
                for m in spans[e.src]:
                    p = mat_mul(a, m)
                    if echs[e.dst].add(vec(p)):
                        nxt[e.dst].append(p)
            spans = nxt
        # echelons only admit nonzero matrices, so any survivor is a witness
        if spans[target]:
            return length
    return None
