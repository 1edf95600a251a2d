"""Kronecker lift: block placement, product collapse, irreducibility links."""

import random
from fractions import Fraction

import pytest

import cswitch as cs
from cswitch.deadbeat import gurvits_arbitrary, gurvits_constrained
from cswitch.generators import gen_example, gen_vehicle
from cswitch.irreducible import IrreducibleStatus, is_irreducible_set
from cswitch.lift import build_lift
from cswitch.linalg import path_product
from cswitch.matrices import Field, mat_mul, zeros
from cswitch.model import Edge, LabeledGraph, MatrixSet, Path, SwitchedSystem

from conftest import random_rational_system, strongly_connected_corpus

F = Fraction


def block(m, i, j, n):
    return tuple(tuple(m[i * n + r][j * n + c] for c in range(n)) for r in range(n))


@pytest.fixture(scope="module")
def ex1():
    return gen_example("ex1")


class TestConstruction:
    def test_block_placement(self, ex1):
        lifted = build_lift(ex1)
        n, nc = ex1.n, ex1.num_nodes
        assert lifted.dimension == n * nc
        for e, m in zip(lifted.edges, lifted.matrices):
            for i in range(nc):
                for j in range(nc):
                    b = block(m, i, j, n)
                    if (i, j) == (e.dst, e.src):
                        assert b == ex1.matrix(e.label)
                    else:
                        assert b == zeros(n, n, ex1.field)

    def test_matrix_for_edge(self, ex1):
        lifted = build_lift(ex1)
        for e in ex1.graph.edges:
            m = lifted.matrix_for_edge(e)
            assert block(m, e.dst, e.src, ex1.n) == ex1.matrix(e.label)

    def test_dense_set_and_arbitrary_system(self, ex1):
        lifted = build_lift(ex1)
        dense = lifted.dense_set()
        assert dense.n == lifted.dimension
        assert len(dense.matrices) == len(ex1.graph.edges)
        sys2 = lifted.as_arbitrary_system()
        assert sys2.num_nodes == 1
        assert len(sys2.graph.edges) == len(ex1.graph.edges)
        cs.validate_system(sys2)


class TestProductCollapse:
    def test_consecutive_path_collapses_to_single_block(self, ex1):
        lifted = build_lift(ex1)
        n = ex1.n
        # path u ->(2) w ->(2) u
        p = Path(edges=(Edge(0, 1, 2), Edge(1, 0, 2)))
        prod = path_product(ex1, p)
        e1, e2 = p.edges
        lifted_prod = mat_mul(lifted.matrix_for_edge(e2), lifted.matrix_for_edge(e1))
        for i in range(ex1.num_nodes):
            for j in range(ex1.num_nodes):
                b = block(lifted_prod, i, j, n)
                if (i, j) == (0, 0):
                    assert b == prod
                else:
                    assert b == zeros(n, n, ex1.field)

    def test_non_consecutive_product_vanishes(self, ex1):
        lifted = build_lift(ex1)
        # (u,u,1) after (u,w,2): destination w does not match source u
        a = lifted.matrix_for_edge(Edge(0, 1, 2))
        b = lifted.matrix_for_edge(Edge(0, 0, 1))
        assert mat_mul(b, a) == zeros(lifted.dimension, lifted.dimension, ex1.field)

    def test_random_path_correspondence(self):
        rng = random.Random(4242)
        done = 0
        while done < 25:
            s = random_rational_system(rng, max_n=2, max_nodes=3, max_edges=6)
            if s is None:
                continue
            done += 1
            lifted = build_lift(s)
            for path in cs.enumerate_paths(s.graph, None, max_len=4):
                prod = path_product(s, path)
                acc = None
                for e in path.edges:
                    m = lifted.matrix_for_edge(e)
                    acc = m if acc is None else mat_mul(m, acc)
                src, dst = path.edges[0].src, path.edges[-1].dst
                for i in range(s.num_nodes):
                    for j in range(s.num_nodes):
                        b = block(acc, i, j, s.n)
                        want = prod if (i, j) == (dst, src) else zeros(s.n, s.n, s.field)
                        assert b == want


class TestDeadbeatEquivalence:
    def test_lifted_arbitrary_matches_constrained(self):
        rng = random.Random(515)
        done = 0
        while done < 40:
            s = random_rational_system(rng, max_n=2, max_nodes=3, max_edges=6)
            if s is None:
                continue
            done += 1
            constrained = gurvits_constrained(s)
            lifted_deadbeat = gurvits_arbitrary(build_lift(s).dense_set())
            assert constrained.is_deadbeat == lifted_deadbeat


class TestIrreducibility:
    def test_weakness_example_lift_reducible_with_structured_witness(self):
        s = gen_example("ex-weakness")
        v = cs.lift_irreducible(s)
        assert v.status is IrreducibleStatus.REDUCIBLE
        w = v.witness
        assert w is not None
        # the invariant subspace pairing coordinate 1 of the left and middle
        # blocks with coordinate 2 of the right block must sit inside it
        for vec in (
            (F(1), F(0), F(0), F(0), F(0), F(0)),
            (F(0), F(1), F(0), F(0), F(0), F(0)),
            (F(0), F(0), F(0), F(1), F(0), F(0)),
            (F(0), F(0), F(0), F(0), F(0), F(1)),
        ):
            target = vec if w.field is Field.RATIONAL else tuple(float(x) for x in vec)
            assert w.contains(target)

    def test_single_node_lift_matches_raw_set(self):
        mats = MatrixSet(
            n=2,
            field=Field.RATIONAL,
            matrices=(
                ((F(0), F(1)), (F(1), F(0))),
                ((F(1), F(0)), (F(0), F(-1))),
            ),
        )
        g = LabeledGraph(node_count=1, edges=(Edge(0, 0, 1), Edge(0, 0, 2)))
        s = SwitchedSystem(graph=g, matrices=mats)
        assert cs.lift_irreducible(s).status is IrreducibleStatus.IRREDUCIBLE
        assert is_irreducible_set(mats.matrices, Field.RATIONAL).status is IrreducibleStatus.IRREDUCIBLE

    def test_lift_irreducible_implies_every_node_irreducible(self):
        for s in strongly_connected_corpus(626, 40, max_n=2, max_nodes=3, max_edges=6):
            if cs.lift_irreducible(s).status is IrreducibleStatus.IRREDUCIBLE:
                verdicts = cs.node_verdicts(s)
                for v, verdict in verdicts.items():
                    assert verdict.status is IrreducibleStatus.IRREDUCIBLE, (s.name, v)

    def test_vehicle_lift_reducible(self):
        # every length-2 product along the graph vanishes, so the lifted
        # algebra is nilpotent and cannot act irreducibly
        v = cs.lift_irreducible(gen_vehicle())
        assert v.status is IrreducibleStatus.REDUCIBLE
