"""Graph-side operations: connectivity, path enumeration, unavoidability.

Node sets are plain frozensets of node indices.  Path enumeration is
streaming and ordered by length, then lexicographically by edge triples;
callers that only need short witnesses can stop early without paying for
the exponential tail.
"""

from __future__ import annotations

from typing import Iterator

from .errors import DimensionMismatch
from .model import LabeledGraph, Path

NodeSet = frozenset


def strongly_connected(graph: LabeledGraph) -> bool:
    """True iff every ordered node pair is joined by a path."""
    return _reaches_all(graph, forward=True) and _reaches_all(graph, forward=False)


def _reaches_all(graph: LabeledGraph, forward: bool) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        edges = graph.out_edges(v) if forward else graph.in_edges(v)
        for e in edges:
            w = e.dst if forward else e.src
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == graph.node_count


def enumerate_paths(
    graph: LabeledGraph,
    source: int | None,
    target: int | None = None,
    max_len: int = 1,
    *,
    exact: bool = False,
) -> Iterator[Path]:
    """Yield paths from ``source`` (to ``target`` if given), shortest first,
    ties broken lexicographically by edge triples.  ``source=None`` ranges
    over all start nodes in index order; ``exact`` keeps only paths of
    length exactly ``max_len``."""
    lengths = [max_len] if exact else range(1, max_len + 1)
    sources = graph.nodes if source is None else [source]
    for length in lengths:
        for s in sources:
            yield from _paths_exact(graph, s, target, length)


def _paths_exact(graph: LabeledGraph, source: int, target: int | None, length: int) -> Iterator[Path]:
    prefix: list = []

    def go(v: int, remaining: int) -> Iterator[Path]:
        if remaining == 0:
            if target is None or v == target:
                yield Path(edges=tuple(prefix))
            return
        for e in graph.out_edges(v):  # out_edges are sorted, so order is lexicographic
            prefix.append(e)
            yield from go(e.dst, remaining - 1)
            prefix.pop()

    yield from go(source, length)


def count_paths(graph: LabeledGraph, length: int, source: int | None = None, target: int | None = None) -> int:
    """Number of paths of exactly ``length`` edges, by multiplicity-matrix powers."""
    nc = graph.node_count
    counts = [[0] * nc for _ in range(nc)]
    for e in graph.edges:
        counts[e.src][e.dst] += 1
    total = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
    for _ in range(length):
        total = [
            [sum(total[i][k] * counts[k][j] for k in range(nc)) for j in range(nc)]
            for i in range(nc)
        ]
    srcs = range(nc) if source is None else [source]
    dsts = range(nc) if target is None else [target]
    return sum(total[i][j] for i in srcs for j in dsts)


def simple_cycles_through(graph: LabeledGraph, v: int, max_len: int = 1) -> Iterator[Path]:
    """Cycles at ``v`` that do not revisit ``v`` in between, shortest first.

    Other nodes may repeat; only the anchor node is excluded from the
    interior, which is what nodal cycle-set constructions need.
    """
    for length in range(1, max_len + 1):
        yield from _cycles_exact(graph, v, length)


def _cycles_exact(graph: LabeledGraph, v: int, length: int) -> Iterator[Path]:
    prefix: list = []

    def go(u: int, remaining: int) -> Iterator[Path]:
        if remaining == 0:
            if u == v:
                yield Path(edges=tuple(prefix))
            return
        for e in graph.out_edges(u):
            if e.dst == v and remaining > 1:
                continue  # would revisit the anchor before the end
            prefix.append(e)
            yield from go(e.dst, remaining - 1)
            prefix.pop()

    yield from go(v, length)


def is_unavoidable(graph: LabeledGraph, marked: NodeSet) -> bool:
    """True iff every cycle of the graph visits a node of ``marked``.

    Equivalent formulation actually computed: after deleting the marked
    nodes and their incident edges, the residual graph is acyclic.  The
    check is an iterative three-color depth-first search, no recursion.
    """
    for v in marked:
        if not (0 <= v < graph.node_count):
            raise DimensionMismatch(f"node {v} is outside 0..{graph.node_count - 1}")
    alive = [v for v in graph.nodes if v not in marked]
    color = {v: 0 for v in alive}  # 0 new, 1 on stack, 2 done
    succ = {
        v: [e.dst for e in graph.out_edges(v) if e.dst not in marked]
        for v in alive
    }
    for start in alive:
        if color[start] != 0:
            continue
        stack: list[tuple[int, int]] = [(start, 0)]
        color[start] = 1
        while stack:
            v, i = stack[-1]
            if i < len(succ[v]):
                stack[-1] = (v, i + 1)
                w = succ[v][i]
                if color[w] == 1:
                    return False  # back edge: a cycle avoiding the marked set
                if color[w] == 0:
                    color[w] = 1
                    stack.append((w, 0))
            else:
                color[v] = 2
                stack.pop()
    return True
