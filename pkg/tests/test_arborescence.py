import random
from fractions import Fraction

import networkx as nx
import pytest

from bicliquetrees import (
    arborescence_sum,
    build_digraph,
    count_eulerian_circuits,
    enumerate_arborescences,
    enumerate_eulerian_circuits,
    line_digraph,
    signed_minor,
    tree_enumerator,
    tree_enumerators,
)
from bicliquetrees import generators as gen
from bicliquetrees.errors import NotEulerianError, NonUnitWeightsError, TooLargeError, VertexOutOfRangeError

F = Fraction


def is_arborescence(g, arb):
    # every non-root vertex reaches the root along chosen edges
    nxt = {v: g.edges[i].head for v, i in arb.chosen_edge.items()}
    assert all(g.edges[i].tail == v for v, i in arb.chosen_edge.items())
    assert set(nxt) == set(range(g.n)) - {arb.root}
    for v in nxt:
        seen = set()
        while v != arb.root:
            assert v not in seen
            seen.add(v)
            v = nxt[v]
    return True


def test_tree_enumerator_examples(c3, k3, path3):
    assert [tree_enumerator(c3, u) for u in range(3)] == [1, 1, 1]
    assert [tree_enumerator(k3, u) for u in range(3)] == [3, 3, 3]
    assert tree_enumerator(path3, 0) == 0
    assert tree_enumerator(path3, 2) == 1


def test_single_vertex_has_one_tree():
    g = build_digraph(1, [])
    assert tree_enumerator(g, 0) == 1
    assert tree_enumerators(g) == (F(1),)
    assert arborescence_sum(g, 0) == 1


def test_enumerate_examples(c3, k3, m2):
    (only,) = enumerate_arborescences(c3, 0)
    assert sorted((c3.edges[i].tail, c3.edges[i].head) for i in only.edge_indices()) == [(1, 2), (2, 0)]
    assert len(enumerate_arborescences(k3, 0)) == 3
    m2_trees = enumerate_arborescences(m2, 0)
    assert len(m2_trees) == 2
    assert {t.edge_indices() for t in m2_trees} == {(2,), (3,)}
    for g in (c3, k3, m2):
        assert all(is_arborescence(g, a) for a in enumerate_arborescences(g, 0))


def test_enumerate_cap(k3):
    with pytest.raises(TooLargeError):
        enumerate_arborescences(k3, 0, cap=3)
    with pytest.raises(VertexOutOfRangeError):
        tree_enumerator(k3, 3)


def test_minor_equals_brute_force_weighted():
    rng = random.Random(11)
    for _ in range(150):
        g = gen.random_digraph(rng, rng.randint(1, 6), 0.4, "rational", parallel=0.15)
        batch = tree_enumerators(g)
        for u in range(g.n):
            t = tree_enumerator(g, u)
            assert t == arborescence_sum(g, u)
            assert batch[u] == t


def test_signed_minors():
    rng = random.Random(5)
    for _ in range(40):
        g = gen.random_digraph(rng, rng.randint(2, 5), 0.5, "int")
        t = tree_enumerators(g)
        for i in range(g.n):
            for j in range(g.n):
                assert signed_minor(g, i, j) == (-1) ** (i + j) * t[i]


def test_against_networkx_counts():
    # networkx counts out-arborescences from a root; reversing edges gives ours
    for g in gen.exhaustive_digraphs(4, 6):
        h = nx.DiGraph([(e.head, e.tail) for e in g.edges])
        h.add_nodes_from(range(g.n))
        if g.n < 2 or not nx.is_weakly_connected(h):
            continue
        for u in range(g.n):
            reach = nx.descendants(h, u) | {u}
            expected = round(nx.number_of_spanning_trees(h, root=u)) if len(reach) == g.n else 0
            assert tree_enumerator(g, u) == expected


def test_eulerian_examples(c3, d2, m2, k3):
    assert count_eulerian_circuits(c3) == 1
    assert count_eulerian_circuits(m2) == 2
    assert count_eulerian_circuits(k3) == 3
    assert enumerate_eulerian_circuits(c3) == 1
    assert enumerate_eulerian_circuits(m2) == 2
    assert enumerate_eulerian_circuits(d2) == 1
    lk = line_digraph(k3).line
    assert count_eulerian_circuits(lk) == enumerate_eulerian_circuits(lk) == 12


def test_eulerian_random():
    rng = random.Random(2)
    for _ in range(60):
        g = gen.random_eulerian(rng, rng.randint(2, 5), rng.randint(0, 3), max_edges=12)
        assert count_eulerian_circuits(g) == enumerate_eulerian_circuits(g)
        k = tree_enumerators(g)
        assert len(set(k)) == 1


def test_eulerian_errors(path3, k3):
    with pytest.raises(NotEulerianError):
        count_eulerian_circuits(path3)
    with pytest.raises(NotEulerianError):
        enumerate_eulerian_circuits(build_digraph(3, [(0, 1), (1, 0), (0, 2), (2, 0), (0, 1), (1, 2)]))
    with pytest.raises(NotEulerianError):
        count_eulerian_circuits(build_digraph(1, []))
    with pytest.raises(NonUnitWeightsError):
        count_eulerian_circuits(build_digraph(2, [(0, 1, 2), (1, 0, 2)]))
    with pytest.raises(TooLargeError):
        enumerate_eulerian_circuits(k3, max_edges=5)
