"""Kronecker lift: one block matrix per edge, constrained system in,
arbitrary-switching system out.

The edge (v_i, v_j, s) lifts to (e_j e_i^T) kron A_s, the |V|n x |V|n
matrix whose only nonzero block sits at block-row j, block-column i and
equals A_s.  Products of lifted matrices along a path v -> w collapse to
(e_w e_v^T) kron A_p, and products of non-consecutive edges vanish, so the
joint spectral radius of the lifted set equals the constrained joint
spectral radius of the original system.  Nodes are ordered by index; block
b covers coordinates b*n .. b*n + n - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import Field, Matrix, zeros
from .model import Edge, LabeledGraph, MatrixSet, SwitchedSystem


@dataclass(frozen=True)
class LiftedSet:
    """The lifted matrices of a system, one per edge, in sorted edge order."""

    node_count: int
    n: int
    field: Field
    edges: tuple[Edge, ...]
    matrices: tuple[Matrix, ...]

    @property
    def dimension(self) -> int:
        return self.node_count * self.n

    def matrix_for_edge(self, edge: Edge) -> Matrix:
        return self.matrices[self.edges.index(Edge(*edge))]

    def dense_set(self) -> MatrixSet:
        return MatrixSet(n=self.dimension, field=self.field, matrices=self.matrices)

    def as_arbitrary_system(self, name: str | None = None) -> SwitchedSystem:
        """Single-node system whose self-loops carry the lifted matrices;
        accepted products are then arbitrary products of the lifted set."""
        loops = tuple(Edge(0, 0, k + 1) for k in range(len(self.matrices)))
        return SwitchedSystem(
            graph=LabeledGraph(node_count=1, edges=loops),
            matrices=self.dense_set(),
            name=name,
        )


def _embed_block(a: Matrix, block_row: int, block_col: int, node_count: int, n: int, field: Field) -> Matrix:
    out = [list(row) for row in zeros(node_count * n, node_count * n, field)]
    for i in range(n):
        dst_row = out[block_row * n + i]
        src_row = a[i]
        for j in range(n):
            dst_row[block_col * n + j] = src_row[j]
    return tuple(tuple(row) for row in out)


def build_lift(system: SwitchedSystem) -> LiftedSet:
    """Lift every edge (v, w, s) to (e_w e_v^T) kron A_s."""
    n = system.n
    nc = system.num_nodes
    mats = tuple(
        _embed_block(system.matrix(e.label), e.dst, e.src, nc, n, system.field)
        for e in system.graph.edges
    )
    return LiftedSet(
        node_count=nc, n=n, field=system.field, edges=system.graph.edges, matrices=mats
    )


def lift_irreducible(system: SwitchedSystem, **kwargs):
    """Irreducibility verdict for the lifted matrix set.

    Lift irreducibility implies irreducibility of every node's cycle set,
    but not conversely; see the boundedness module for the nodal checks.
    """
    from .irreducible import is_irreducible_set

    lifted = build_lift(system)
    return is_irreducible_set(lifted.matrices, system.field, **kwargs)
