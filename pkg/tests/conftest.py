"""Shared corpus builders for the test suite.

Random systems are drawn with a zero bias so that dead-beat and reducible
cases appear often; every draw is seeded, so failures reproduce exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction

import cswitch as cs


def rand_rational_matrix(rng: random.Random, n: int, zero_bias: float = 0.6,
                         mag: int = 3, max_denom: int = 3):
    return tuple(
        tuple(
            Fraction(0)
            if rng.random() < zero_bias
            else Fraction(rng.randint(-mag, mag), rng.randint(1, max_denom))
            for _ in range(n)
        )
        for _ in range(n)
    )


def random_rational_system(
    rng: random.Random,
    max_n: int = 3,
    max_nodes: int = 4,
    max_edges: int = 8,
    max_labels: int = 3,
    zero_bias: float = 0.6,
) -> cs.SwitchedSystem | None:
    """One random draw; None when the edge draw collapses to an invalid graph."""
    n = rng.randint(1, max_n)
    nodes = rng.randint(1, max_nodes)
    labels = rng.randint(1, max_labels)
    edges = set()
    for _ in range(rng.randint(1, max_edges)):
        edges.add((rng.randrange(nodes), rng.randrange(nodes), rng.randint(1, labels)))
    mats = [rand_rational_matrix(rng, n, zero_bias) for _ in range(labels)]
    try:
        graph = cs.LabeledGraph(nodes, tuple(cs.Edge(*e) for e in edges))
    except cs.CswitchError:
        return None
    return cs.SwitchedSystem(graph=graph, matrices=cs.MatrixSet.make(mats, cs.Field.RATIONAL))


def system_corpus(seed: int, count: int, **kwargs) -> list[cs.SwitchedSystem]:
    rng = random.Random(seed)
    out: list[cs.SwitchedSystem] = []
    while len(out) < count:
        s = random_rational_system(rng, **kwargs)
        if s is not None:
            out.append(s)
    return out


def strongly_connected_corpus(seed: int, count: int, **kwargs) -> list[cs.SwitchedSystem]:
    rng = random.Random(seed)
    out: list[cs.SwitchedSystem] = []
    while len(out) < count:
        s = random_rational_system(rng, **kwargs)
        if s is not None and cs.strongly_connected(s.graph):
            out.append(s)
    return out
