"""Bundled example systems.

Three families: a synchronizing-automaton family with extremal escape and
connectivity lengths (Cerny automata), a vehicle platoon left-inverter
whose consistent length-2 products all vanish, and three small pedagogical
systems.  Every generator is mirrored by a checked-in fixture file.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownExampleId, ZeroParameter
from .matrices import Field
from .model import Edge, LabeledGraph, MatrixSet, SwitchedSystem

EXAMPLE_IDS = ("ex1", "ex2", "ex-weakness")


@dataclass(frozen=True)
class CernyParams:
    """Matrix dimension ``n`` and node count ``m`` for the Cerny family."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("matrix dimension must be at least 1")
        if self.m < 2:
            raise ValueError("node count must be at least 2")


def gen_cerny(params: CernyParams) -> SwitchedSystem:
    """Cerny automaton on m nodes with shift/corner matrices of size n.

    Label 1 self-loops on every node except node 0; label 2 advances the
    m-cycle from every node.  A_1 is the superdiagonal shift, A_2 has a
    single entry in the bottom-left corner.  Node 0 (the one without a
    self-loop) escapes span{e_1} only through the full cycle product
    A_2 (A_1^{n-1} A_2)^{m-1}, so the shortest escape cycle has length
    1 + n(m-1) and the shortest nonzero-product path from node 0 to node
    m-1 has length 1 + n(m-2).
    """
    n, m = params.n, params.m
    a1 = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1):
        a1[i][i + 1] = Fraction(1)
    a2 = [[Fraction(0)] * n for _ in range(n)]
    a2[n - 1][0] = Fraction(1)
    edges = [Edge(0, 1 % m, 2)]
    for i in range(1, m):
        edges.append(Edge(i, i, 1))
        edges.append(Edge(i, (i + 1) % m, 2))
    return SwitchedSystem(
        graph=LabeledGraph(m, tuple(edges)),
        matrices=MatrixSet.make([a1, a2], Field.RATIONAL),
        name=f"cerny-n{n}-m{m}",
    )


def gen_vehicle(a1: Fraction | int = Fraction(1, 2), a2: Fraction | int = Fraction(1, 3)) -> SwitchedSystem:
    """Left-inverter error system of a two-mode vehicle platoon.

    Nodes are ordered mode pairs (T_i, T_j); the pair constraint admits
    (T_i,T_j) -> (T_j,T_k) only, giving 4 nodes and 8 edges.  The matrix on
    an edge belongs to the destination pair:

        Q(T_i, T_j) = [[1, a_i], [-1/a_j, -a_i/a_j]]

    Q(T_j,T_k) Q(T_i,T_j) = 0 for every consistent pair of factors, so the
    constrained system is dead-beat with horizon 2, while inconsistent
    products such as Q(T_1,T_1) Q(T_2,T_2) are nonzero whenever a1 != a2.
    """
    a = (Fraction(a1), Fraction(a2))
    if a[0] == 0 or a[1] == 0:
        raise ZeroParameter("vehicle parameters must be nonzero")
    pairs = [(1, 1), (1, 2), (2, 1), (2, 2)]
    index = {p: k for k, p in enumerate(pairs)}

    def q(i: int, j: int):
        ai, aj = a[i - 1], a[j - 1]
        return [[Fraction(1), ai], [-1 / aj, -ai / aj]]

    mats = [q(i, j) for (i, j) in pairs]
    edges = []
    for (i, j) in pairs:
        for k in (1, 2):
            dst = (j, k)
            edges.append(Edge(index[(i, j)], index[dst], index[dst] + 1))
    return SwitchedSystem(
        graph=LabeledGraph(4, tuple(edges)),
        matrices=MatrixSet.make(mats, Field.RATIONAL),
        name="vehicle-left-inverter",
        node_names=tuple(f"T{i}T{j}" for (i, j) in pairs),
    )


def gen_example(example_id: str) -> SwitchedSystem:
    """One of three small pedagogical systems.

    ex1: unipotent + swap on a 2-node automaton that forbids the label
    pattern 1,2,1; unbounded polynomial growth with CJSR 1, and no node is
    irreducible.

    ex2: scalar system on a 2-node cycle alternating A_1 = [1], A_2 = [0];
    dead-beat with horizon 2 although A_1 alone is not stable.

    ex-weakness: swap + diag(0,1) on a 3-node automaton that caps label 2
    at two consecutive activations; the left node is irreducible and
    unavoidable, yet the lifted matrix set is reducible.
    """
    if example_id == "ex1":
        a1 = [[1, 1], [0, 1]]
        a2 = [[0, 1], [1, 0]]
        return SwitchedSystem(
            graph=LabeledGraph(2, (Edge(0, 0, 1), Edge(0, 1, 2), Edge(1, 0, 2))),
            matrices=MatrixSet.make([a1, a2], Field.RATIONAL),
            name="ex1",
            node_names=("u", "w"),
        )
    if example_id == "ex2":
        return SwitchedSystem(
            graph=LabeledGraph(2, (Edge(0, 1, 1), Edge(1, 0, 2))),
            matrices=MatrixSet.make([[[1]], [[0]]], Field.RATIONAL),
            name="ex2",
            node_names=("u", "w"),
        )
    if example_id == "ex-weakness":
        a1 = [[0, 1], [1, 0]]
        a2 = [[0, 0], [0, 1]]
        edges = (Edge(0, 0, 1), Edge(0, 1, 2), Edge(1, 0, 1), Edge(1, 2, 2), Edge(2, 0, 1))
        return SwitchedSystem(
            graph=LabeledGraph(3, edges),
            matrices=MatrixSet.make([a1, a2], Field.RATIONAL),
            name="ex-weakness",
            node_names=("left", "middle", "right"),
        )
    raise UnknownExampleId(f"no example named {example_id!r}; known: {', '.join(EXAMPLE_IDS)}")
