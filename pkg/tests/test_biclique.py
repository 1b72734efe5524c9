import random
from fractions import Fraction

import networkx as nx
import pytest

from bicliquetrees import (
    Biclique,
    bidirect,
    build_digraph,
    build_undirected,
    count_eulerian_circuits,
    enumerate_eulerian_circuits,
    eulerian_count_via_partition,
    format_partition,
    in_star_partition,
    induced_digraph,
    kappa_via_partition,
    line_digraph,
    line_sum_identity_check,
    line_tree_knuth,
    line_tree_levine,
    natural_line_partition,
    omega_digraph,
    parse_partition,
    partition_tree_enum_from_host,
    schur_partition_identity,
    star_partition,
    theta_digraph,
    theta_tree_enum_from_host,
    tree_enum_via_partition,
    tree_enumerator,
    tree_enumerators,
    twin_partition,
    undirected_tree_count,
    validate_partition,
)
from bicliquetrees import generators as gen
from bicliquetrees.errors import (
    CoverageGapError,
    CoverageOverlapError,
    DegreeHypothesisViolatedError,
    DisconnectedError,
    GraphFormatError,
    HostMismatchError,
    HypothesisViolatedError,
    InDegreeZeroError,
    NonUnitWeightsError,
    NotABicliqueError,
    NotEulerianError,
    RootNotCoveredError,
    SingularBlockError,
    WeightsNotInducedError,
    ZeroOutDegreeError,
)

F = Fraction


def edge_index(g, tail, head):
    return next(e.index for e in g.edges if (e.tail, e.head) == (tail, head))


def same_weighted(a, b):
    return a.n == b.n and sorted(a.triples()) == sorted(b.triples())


# --- partitions ------------------------------------------------------------


def test_validate_examples(c3, k3):
    assert validate_partition(c3, [([0], [1]), ([1], [2]), ([2], [0])]).r == 3
    assert validate_partition(k3, [([0], [1, 2]), ([1], [0, 2]), ([2], [0, 1])]).r == 3
    with pytest.raises(NotABicliqueError):
        validate_partition(c3, [([0, 1], [1, 2])])


def test_partition_mutations(k3):
    good = [([0], [1, 2]), ([1], [0, 2]), ([2], [0, 1])]
    validate_partition(k3, good)
    with pytest.raises(CoverageGapError):
        validate_partition(k3, good[:2])
    with pytest.raises(CoverageGapError):
        validate_partition(k3, [([0], [1]), *good[1:]])
    with pytest.raises(CoverageOverlapError):
        validate_partition(k3, good + [([0], [1])])
    with pytest.raises(NotABicliqueError):
        validate_partition(k3, [([0], [])] + good)
    with pytest.raises(NotABicliqueError):
        validate_partition(build_digraph(3, [(0, 1), (1, 2), (2, 0)]), [([0], [1, 2])])


def test_multigraph_partition(m2):
    part = validate_partition(m2, [([0, 0], [1]), ([1], [0, 0])])
    assert part[0].mult1[0] == 2
    with pytest.raises(CoverageGapError):
        validate_partition(m2, [([0], [1]), ([1], [0, 0])])
    assert star_partition(m2).bicliques == (Biclique((0,), (1, 1)), Biclique((1,), (0, 0)))


def test_star_examples(c3, k3, path3):
    assert star_partition(c3).r == 3
    assert [len(q.part2) for q in star_partition(k3)] == [2, 2, 2]
    sp = star_partition(path3)
    assert sp.r == 2 and sp.labels == (0, 1)


def test_twin_and_in_star():
    rng = random.Random(4)
    for _ in range(30):
        g = gen.random_twinned(rng, 3, 6, 0.3)
        twin = twin_partition(g)
        assert twin.r <= star_partition(g).r
        assert in_star_partition(g).r == sum(1 for v in range(g.n) if g.in_degree(v))


def test_natural_line_examples(c3, k3, d2):
    ld, part = natural_line_partition(c3)
    assert part.r == 3 and all(len(q.part1) == len(q.part2) == 1 for q in part)
    ld, part = natural_line_partition(k3)
    assert part.r == 3 and all(len(q.part1) == len(q.part2) == 2 for q in part)
    assert sum(len(q.part1) * len(q.part2) for q in part) == ld.line.m == 12
    assert natural_line_partition(d2)[1].r == 2


def test_partition_file_roundtrip(k3):
    part = star_partition(k3)
    text = format_partition(part)
    assert text.splitlines()[0] == "Q 0: [0] -> [1, 2]"
    again = parse_partition(text, k3)
    assert again.bicliques == part.bicliques
    with pytest.raises(GraphFormatError) as info:
        parse_partition("Q 0: [0] -> [1, 2]\nnonsense\n", k3)
    assert info.value.line == 2
    with pytest.raises(CoverageGapError):
        parse_partition("Q 0: [0] -> [1, 2]\n", k3)


# --- reduced digraphs ------------------------------------------------------


def test_omega_examples(c3, k3):
    assert same_weighted(omega_digraph(star_partition(c3), [1, 1, 1]).digraph, c3)
    assert same_weighted(omega_digraph(star_partition(k3), [1, 1, 1]).digraph, k3)
    om = omega_digraph(star_partition(c3), [1, 2, 4]).digraph
    assert sorted(om.triples()) == [(0, 1, F(2)), (1, 2, F(4)), (2, 0, F(1))]


def test_omega_weight_checks():
    # vertex 1 is entered with two different weights
    g = build_digraph(3, [(0, 1, 2), (2, 1, 3), (1, 2, 1), (2, 0, 1)])
    with pytest.raises(WeightsNotInducedError):
        omega_digraph(star_partition(g))
    gw = build_digraph(3, [(0, 1, 2), (1, 2, 4), (2, 0, 1)])
    assert omega_digraph(star_partition(gw)).vertex_weights == (1, 2, 4)
    with pytest.raises(WeightsNotInducedError):
        omega_digraph(star_partition(gw), [1, 1, 1])


def test_theta_examples(c3, k3):
    assert same_weighted(theta_digraph(star_partition(c3)).digraph, c3)
    assert same_weighted(theta_digraph(star_partition(k3)).digraph, k3)
    ld, part = natural_line_partition(k3)
    th = theta_digraph(part).digraph
    assert th.is_unit_weight and nx.is_isomorphic(
        nx.DiGraph([(e.tail, e.head) for e in th.edges]),
        nx.DiGraph([(e.tail, e.head) for e in k3.edges]),
    )


def test_sink_only_appears_as_head():
    g = build_digraph(3, [(0, 1), (1, 2), (0, 2)])
    part = validate_partition(g, [([0], [1]), ([1, 0], [2])])
    assert theta_digraph(part).digraph.triples() == [(0, 1, F(1))]


# --- tree enumerators through partitions -----------------------------------


def test_tree_enum_examples(c3, k3):
    assert tree_enum_via_partition(c3, star_partition(c3), 0) == 1
    assert tree_enum_via_partition(k3, star_partition(k3), 0) == 3
    weighted = induced_digraph(c3, [1, 2, 4])
    direct = tree_enumerator(weighted, 0)
    assert tree_enum_via_partition(c3, star_partition(c3), 0, [1, 2, 4]) == direct
    assert tree_enum_via_partition(weighted, star_partition(weighted), 0) == direct


def test_from_host_examples(c3, k3):
    assert partition_tree_enum_from_host(c3, star_partition(c3), 0) == 1
    assert partition_tree_enum_from_host(k3, star_partition(k3), 0) == 3
    ld, part = natural_line_partition(k3)
    assert partition_tree_enum_from_host(ld.line, part) == tree_enumerators(omega_digraph(part).digraph)
    assert theta_tree_enum_from_host(ld.line, part) == tree_enumerators(theta_digraph(part).digraph)


def test_tree_enum_errors(path3):
    g = build_digraph(3, [(0, 1), (1, 2), (2, 1)])
    with pytest.raises(RootNotCoveredError):
        tree_enum_via_partition(g, star_partition(g), 0)
    assert tree_enumerator(g, 0) == 0
    with pytest.raises(ZeroOutDegreeError):
        tree_enum_via_partition(path3, star_partition(path3), 2)
    with pytest.raises(ZeroOutDegreeError):
        partition_tree_enum_from_host(path3, star_partition(path3), 0)
    other = build_digraph(3, [(0, 2), (2, 1), (1, 0)])
    with pytest.raises(HostMismatchError):
        tree_enum_via_partition(other, star_partition(path3), 1)


@pytest.mark.parametrize("seed", range(6))
def test_reduction_matches_direct(seed):
    rng = random.Random(seed)
    for _ in range(15):
        n = rng.randint(2, 7)
        g = gen.random_digraph(rng, n, 0.35, "unit", min_out=1, parallel=0.1)
        ws = [rng.randint(1, 20) for _ in range(n)]
        gw = induced_digraph(g, ws)
        for part in (star_partition(gw), twin_partition(gw), in_star_partition(gw)):
            t_direct = tree_enumerators(gw)
            k_direct = tree_enumerators(g)
            for u in range(n):
                if g.in_degree(u):
                    assert tree_enum_via_partition(gw, part, u) == t_direct[u]
                    assert kappa_via_partition(gw, part, u) == k_direct[u]
            assert partition_tree_enum_from_host(gw, part) == tree_enumerators(omega_digraph(part).digraph)
            assert theta_tree_enum_from_host(gw, part) == tree_enumerators(theta_digraph(part).digraph)


# --- Eulerian counts ---------------------------------------------------------


def test_eulerian_via_partition_examples(c3, k3, m2):
    for i in range(3):
        assert eulerian_count_via_partition(c3, star_partition(c3), i) == (1, 1)
        assert eulerian_count_via_partition(k3, star_partition(k3), i) == (3, enumerate_eulerian_circuits(k3))
    assert eulerian_count_via_partition(m2, star_partition(m2)) == (2, 2)
    ld, part = natural_line_partition(k3)
    assert eulerian_count_via_partition(ld.line, part) == (tree_enumerator(ld.line, 0), 12)


def test_eulerian_via_partition_random():
    rng = random.Random(9)
    for _ in range(40):
        g = gen.random_eulerian(rng, rng.randint(2, 6), rng.randint(0, 4))
        expected = (tree_enumerator(g, 0), count_eulerian_circuits(g))
        for part in (star_partition(g), in_star_partition(g), twin_partition(g)):
            assert eulerian_count_via_partition(g, part) == expected


def test_eulerian_via_partition_errors(path3):
    with pytest.raises(NotEulerianError):
        eulerian_count_via_partition(path3, star_partition(path3))


# --- line digraph formulas --------------------------------------------------


def test_knuth_examples(c3, k3, d2):
    assert line_tree_knuth(c3, edge_index(c3, 0, 1)) == 1
    assert line_tree_knuth(k3, edge_index(k3, 0, 1)) == 12
    assert line_tree_knuth(d2, edge_index(d2, 0, 1)) == 1
    with pytest.raises(DegreeHypothesisViolatedError):
        line_tree_knuth(build_digraph(3, [(0, 1), (1, 2), (2, 1)]), 0)
    with pytest.raises(NonUnitWeightsError):
        line_tree_knuth(build_digraph(2, [(0, 1, 2), (1, 0, 1)]), 0)


def test_levine_examples(c3, k3):
    e = edge_index(k3, 0, 1)
    assert line_tree_levine(k3, e) == 12
    ws = [1, 1, 2]
    weighted_line = line_digraph(induced_digraph(k3, ws)).line
    assert line_tree_levine(k3, e, ws) == tree_enumerator(weighted_line, e)
    with pytest.raises(HypothesisViolatedError):
        line_tree_levine(c3, edge_index(c3, 0, 1))


def test_line_formulas_random():
    rng = random.Random(21)
    for _ in range(40):
        g = gen.random_strongly_connected(rng, rng.randint(2, 5), 0.3)
        kl = tree_enumerators(line_digraph(g).line)
        gw = build_digraph(g.n, [(e.tail, e.head, gen.random_rational(rng)) for e in g.edges])
        tl = tree_enumerators(line_digraph(gw).line)
        for e in g.edges:
            assert line_tree_knuth(g, e.index) == kl[e.index]
            if g.in_degree(e.head) >= 2:
                assert line_tree_levine(gw, e.index) == tl[e.index]
        lhs, rhs = line_sum_identity_check(gw)
        assert lhs == rhs == sum(tl)


def test_line_sum_examples(c3, k3):
    assert line_sum_identity_check(c3) == (3, 3)
    assert line_sum_identity_check(k3) == (72, 72)


def test_line_sum_with_sink():
    # sink fed by two edges: both sides vanish
    g = build_digraph(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3)])
    assert line_sum_identity_check(g) == (0, 0)
    # sink fed by one edge: the sides still agree but need not vanish
    h = build_digraph(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    lhs, rhs = line_sum_identity_check(h)
    assert lhs == rhs == 1
    with pytest.raises(InDegreeZeroError):
        line_sum_identity_check(build_digraph(2, [(0, 1)]))


# --- Schur complements and undirected counts -------------------------------


def test_schur_examples(k3):
    assert schur_partition_identity(k3, [0, 1], 0) == (F(3, 2), F(3, 2))
    assert schur_partition_identity(k3, [0, 1], 1) == (F(3, 2), F(3, 2))


def test_schur_random():
    rng = random.Random(8)
    done = 0
    while done < 40:
        g = gen.random_strongly_connected(rng, 6, 0.3, "rational")
        v1 = rng.sample(range(6), rng.randint(1, 5))
        lhs, rhs = schur_partition_identity(g, v1, rng.choice(v1))
        assert lhs == rhs
        done += 1


def test_schur_singular_block():
    g = build_digraph(3, [(0, 1), (1, 2)])
    with pytest.raises(SingularBlockError):
        schur_partition_identity(g, [0, 1], 0)


def test_undirected_examples(triangle):
    assert undirected_tree_count(triangle) == 3
    assert undirected_tree_count(build_undirected(2, [(0, 1)])) == 1
    assert undirected_tree_count(build_undirected(4, [(0, 1), (1, 2), (2, 3), (3, 0)])) == 4
    assert undirected_tree_count(build_undirected(1, [])) == 1
    with pytest.raises(DisconnectedError):
        undirected_tree_count(build_undirected(3, [(0, 1)]))


def test_undirected_random_against_networkx():
    rng = random.Random(17)
    for _ in range(25):
        h = gen.random_connected_undirected(rng, rng.randint(2, 7), 0.35)
        expected = round(nx.number_of_spanning_trees(nx.Graph([(a, b) for a, b, _ in h.edges])))
        assert undirected_tree_count(h) == expected
        assert undirected_tree_count(h, twin_partition(bidirect(h))) == expected
