"""Core model: labeled automata, matrix sets, systems, paths.

A system pairs a labeled directed graph G (nodes 0..|V|-1, edge labels
1..N) with one n x n matrix per label.  A switching sequence is accepted
when it reads off a walk in G; the product along a path applies later
edges on the left, so the path e1 e2 ... eT has product A_{eT} ... A_{e1}.

All types are immutable after construction and validate their own hard
invariants; :func:`validate_system` re-checks everything and reports the
soft findings (unused labels, connectivity) without raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import (
    DimensionMismatch,
    DuplicateEdge,
    EmptyGraph,
    FieldMismatch,
    NonConsecutivePath,
    UnknownLabel,
)
from .matrices import Field, Matrix, as_matrix, require_square


class Edge(NamedTuple):
    """Directed edge src -> dst reading mode ``label`` (labels are 1-based)."""

    src: int
    dst: int
    label: int


@dataclass(frozen=True)
class LabeledGraph:
    """Directed multigraph with labeled edges; parallel edges must differ in label."""

    node_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.node_count < 1:
            raise EmptyGraph("a graph needs at least one node")
        if not self.edges:
            raise EmptyGraph("a graph with no edges accepts no switching sequence")
        edges = tuple(Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        seen = set()
        for e in self.edges:
            if not (0 <= e.src < self.node_count and 0 <= e.dst < self.node_count):
                raise DimensionMismatch(f"edge {e} leaves the node range 0..{self.node_count - 1}")
            if e.label < 1:
                raise UnknownLabel(f"edge {e} has a non-positive label")
            if e in seen:
                raise DuplicateEdge(f"edge {e} appears twice")
            seen.add(e)
        out: list[list[Edge]] = [[] for _ in range(self.node_count)]
        inc: list[list[Edge]] = [[] for _ in range(self.node_count)]
        for e in self.edges:
            out[e.src].append(e)
            inc[e.dst].append(e)
        object.__setattr__(self, "_out", tuple(tuple(es) for es in out))
        object.__setattr__(self, "_in", tuple(tuple(es) for es in inc))

    def out_edges(self, v: int) -> tuple[Edge, ...]:
        return self._out[v]

    def in_edges(self, v: int) -> tuple[Edge, ...]:
        return self._in[v]

    @property
    def labels_used(self) -> frozenset[int]:
        return frozenset(e.label for e in self.edges)

    @property
    def nodes(self) -> range:
        return range(self.node_count)


@dataclass(frozen=True)
class MatrixSet:
    """N square matrices over one scalar field; matrix i carries label i+1."""

    n: int
    field: Field
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        if not self.matrices:
            raise DimensionMismatch("a matrix set needs at least one matrix")
        coerced = tuple(as_matrix(m, self.field) for m in self.matrices)
        for m in coerced:
            require_square(m, self.n)
        object.__setattr__(self, "matrices", coerced)

    @classmethod
    def make(cls, matrices, field: Field) -> "MatrixSet":
        mats = [as_matrix(m, field) for m in matrices]
        if not mats:
            raise DimensionMismatch("a matrix set needs at least one matrix")
        return cls(n=require_square(mats[0]), field=field, matrices=tuple(mats))

    @property
    def size(self) -> int:
        return len(self.matrices)

    def matrix(self, label: int) -> Matrix:
        if not (1 <= label <= len(self.matrices)):
            raise UnknownLabel(f"label {label} has no matrix (have 1..{len(self.matrices)})")
        return self.matrices[label - 1]


@dataclass(frozen=True)
class SwitchedSystem:
    """A constrained switching system: automaton plus one matrix per label."""

    graph: LabeledGraph
    matrices: MatrixSet
    name: str | None = None
    node_names: tuple[str, ...] | None = None

    def __post_init__(self):
        for e in self.graph.edges:
            if e.label > self.matrices.size:
                raise UnknownLabel(
                    f"edge {tuple(e)} uses label {e.label} but only {self.matrices.size} matrices are given"
                )
        if self.node_names is not None:
            names = tuple(str(s) for s in self.node_names)
            if len(names) != self.graph.node_count:
                raise DimensionMismatch("node_names length differs from the node count")
            object.__setattr__(self, "node_names", names)

    @property
    def n(self) -> int:
        return self.matrices.n

    @property
    def field(self) -> Field:
        return self.matrices.field

    @property
    def num_nodes(self) -> int:
        return self.graph.node_count

    @property
    def num_modes(self) -> int:
        return self.matrices.size

    def matrix(self, label: int) -> Matrix:
        return self.matrices.matrix(label)

    def node_name(self, v: int) -> str:
        if self.node_names is not None:
            return self.node_names[v]
        return str(v)


@dataclass(frozen=True)
class Path:
    """A nonempty walk in the automaton; edges chain head-to-tail."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple(Edge(*e) for e in self.edges)
        if not edges:
            raise NonConsecutivePath("a path needs at least one edge")
        for a, b in zip(edges, edges[1:]):
            if a.dst != b.src:
                raise NonConsecutivePath(f"edge {tuple(b)} does not start where {tuple(a)} ends")
        object.__setattr__(self, "edges", edges)

    @property
    def source(self) -> int:
        return self.edges[0].src

    @property
    def destination(self) -> int:
        return self.edges[-1].dst

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> tuple[int, ...]:
        """Temporal label sequence (first activated mode first)."""
        return tuple(e.label for e in self.edges)

    @property
    def is_cycle(self) -> bool:
        return self.source == self.destination

    def nodes_visited(self) -> tuple[int, ...]:
        return (self.source,) + tuple(e.dst for e in self.edges)


def with_field(system: SwitchedSystem, target: Field) -> SwitchedSystem:
    """The same system over another scalar field.

    Rationals convert to doubles (rounding once per entry).  The reverse
    would have to invent exact values for inexact data, so it is refused.
    """
    if target is system.field:
        return system
    if target is Field.RATIONAL:
        raise FieldMismatch("refusing to promote floats to exact rationals")
    mats = [[[float(x) for x in row] for row in m] for m in system.matrices.matrices]
    return SwitchedSystem(
        graph=system.graph,
        matrices=MatrixSet.make(mats, Field.FLOAT),
        name=system.name,
        node_names=system.node_names,
    )


@dataclass(frozen=True)
class ValidationReport:
    """Findings of :func:`validate_system`; construction already guarantees
    the hard invariants, the report records what was checked and the soft
    warnings."""

    n: int
    field: Field
    node_count: int
    edge_count: int
    dimensions_ok: bool
    duplicate_free: bool
    labels_declared: int
    labels_used: tuple[int, ...]
    unused_labels: tuple[int, ...]
    effective_mode_count: int
    strongly_connected: bool
    warnings: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.dimensions_ok and self.duplicate_free


def validate_system(system: SwitchedSystem) -> ValidationReport:
    """Re-check a system and report label coverage and connectivity.

    Unknown labels, dimension mismatches, duplicate edges and empty graphs
    raise at construction time; what remains to report here is which
    declared labels are actually read by some edge (unused ones shrink the
    effective mode count, with a warning) and whether the automaton is
    strongly connected, which is computed rather than assumed.
    """
    from .graphs import strongly_connected  # local import to avoid a cycle

    used = sorted(system.graph.labels_used)
    declared = system.num_modes
    unused = tuple(l for l in range(1, declared + 1) if l not in set(used))
    warnings = []
    if unused:
        warnings.append(
            f"labels {list(unused)} have matrices but no edges; effective mode count is {len(used)}"
        )
    sc = strongly_connected(system.graph)
    if not sc:
        warnings.append("the automaton is not strongly connected")
    return ValidationReport(
        n=system.n,
        field=system.field,
        node_count=system.num_nodes,
        edge_count=len(system.graph.edges),
        dimensions_ok=True,
        duplicate_free=True,
        labels_declared=declared,
        labels_used=tuple(used),
        unused_labels=unused,
        effective_mode_count=len(used),
        strongly_connected=sc,
        warnings=tuple(warnings),
    )
