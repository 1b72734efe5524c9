"""Biclique partitions and the spanning-tree reduction formulas built on them.

A biclique ``Q`` is a pair of vertex multisets (tails ``part1``, heads
``part2``) standing for every edge ``u -> v`` with ``u`` in ``part1`` and
``v`` in ``part2``.  Multiplicities only matter for multigraphs: a biclique
contributes ``m1(u) * m2(v)`` copies of ``u -> v``.

The reduced digraphs live on the bicliques.  ``omega_digraph`` uses
vertex-induced weights, ``theta_digraph`` is its all-ones specialisation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, prod
from typing import Iterable, Sequence

from .arborescence import tree_enumerator, tree_enumerators
from .errors import (
    CoverageGapError,
    CoverageOverlapError,
    DegreeHypothesisViolatedError,
    DisconnectedError,
    GraphFormatError,
    HostMismatchError,
    HypothesisViolatedError,
    IdentityViolatedError,
    InDegreeZeroError,
    InvalidArgumentError,
    NonIntegerResultError,
    NonUnitWeightsError,
    NotABicliqueError,
    NotEulerianError,
    RootNotCoveredError,
    VertexOutOfRangeError,
    WeightsNotInducedError,
    ZeroDegreeError,
    ZeroOutDegreeError,
)
from .graph import (
    BlowUp,
    LineDigraphResult,
    UndirectedGraph,
    WeightedDigraph,
    bidirect,
    build_digraph,
    induced_digraph,
    infer_vertex_weights,
    is_connected,
    is_eulerian,
    laplacian,
    line_digraph,
    vertex_weight_vector,
)
from .linalg import det, minor_det, schur_complement

__all__ = [
    "Biclique",
    "BicliquePartition",
    "ReducedDigraph",
    "validate_partition",
    "require_same_host",
    "star_partition",
    "in_star_partition",
    "twin_partition",
    "natural_line_partition",
    "blow_up_partition",
    "biclique_digraph",
    "omega_digraph",
    "theta_digraph",
    "tree_enum_via_partition",
    "kappa_via_partition",
    "partition_tree_enum_from_host",
    "theta_tree_enum_from_host",
    "eulerian_count_via_partition",
    "line_tree_knuth",
    "line_tree_levine",
    "line_sum_identity_check",
    "schur_partition_identity",
    "undirected_tree_count",
    "parse_partition",
    "format_partition",
]


@dataclass(frozen=True)
class Biclique:
    part1: tuple[int, ...]
    part2: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "part1", tuple(sorted(self.part1)))
        object.__setattr__(self, "part2", tuple(sorted(self.part2)))

    @cached_property
    def mult1(self) -> Counter:
        return Counter(self.part1)

    @cached_property
    def mult2(self) -> Counter:
        return Counter(self.part2)

    def pairs(self) -> Counter:
        """Edge multiplicities ``(u, v) -> m1(u) * m2(v)`` this biclique claims."""
        return Counter({(u, v): a * b for u, a in self.mult1.items() for v, b in self.mult2.items()})


@dataclass(frozen=True)
class BicliquePartition:
    host: WeightedDigraph
    bicliques: tuple[Biclique, ...]
    # optional display label per biclique (e.g. the star centre)
    labels: tuple[int, ...] | None = None

    @property
    def r(self) -> int:
        return len(self.bicliques)

    def __iter__(self):
        return iter(self.bicliques)

    def __getitem__(self, i: int) -> Biclique:
        return self.bicliques[i]

    @cached_property
    def _heads_of(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        # vertex u -> ((i, m2_i(u)), ...) over bicliques with u among the heads
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.host.n)]
        for i, q in enumerate(self.bicliques):
            for u, m in sorted(q.mult2.items()):
                out[u].append((i, m))
        return tuple(tuple(x) for x in out)

    @cached_property
    def _tails_of(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.host.n)]
        for j, q in enumerate(self.bicliques):
            for u, m in sorted(q.mult1.items()):
                out[u].append((j, m))
        return tuple(tuple(x) for x in out)

    def heads_of(self, u: int) -> tuple[tuple[int, int], ...]:
        return self._heads_of[u]

    def tails_of(self, u: int) -> tuple[tuple[int, int], ...]:
        return self._tails_of[u]

    @cached_property
    def links(self) -> dict[tuple[int, int], tuple[tuple[int, int], ...]]:
        """``(i, j) -> ((u, m2_i(u) * m1_j(u)), ...)`` over shared vertices."""
        out: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for u in range(self.host.n):
            for i, a in self._heads_of[u]:
                for j, b in self._tails_of[u]:
                    out.setdefault((i, j), []).append((u, a * b))
        return {k: tuple(v) for k, v in sorted(out.items())}


@dataclass(frozen=True)
class ReducedDigraph:
    digraph: WeightedDigraph
    kind: str  # "omega" or "theta"
    partition: BicliquePartition
    vertex_weights: tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# partitions


def validate_partition(
    g: WeightedDigraph,
    parts: Iterable[tuple[Iterable[int], Iterable[int]] | Biclique],
    labels: Sequence[int] | None = None,
) -> BicliquePartition:
    """Check that ``parts`` covers every edge of ``g`` exactly once."""
    bicliques = []
    for k, p in enumerate(parts):
        q = p if isinstance(p, Biclique) else Biclique(tuple(p[0]), tuple(p[1]))
        if not q.part1 or not q.part2:
            raise NotABicliqueError(f"biclique {k} has an empty side")
        for v in q.part1 + q.part2:
            if not 0 <= v < g.n:
                raise VertexOutOfRangeError(f"biclique {k} mentions vertex {v} (n={g.n})")
        bicliques.append(q)

    have = Counter((e.tail, e.head) for e in g.edges)
    cover: Counter = Counter()
    for k, q in enumerate(bicliques):
        for pair, mult in sorted(q.pairs().items()):
            if have[pair] == 0:
                raise NotABicliqueError(f"biclique {k} claims missing edge {pair[0]}->{pair[1]}")
            cover[pair] += mult
            if cover[pair] > have[pair]:
                raise CoverageOverlapError(
                    f"edge {pair[0]}->{pair[1]} covered {cover[pair]} times, "
                    f"present {have[pair]} times"
                )
    for pair, mult in sorted(have.items()):
        if cover[pair] < mult:
            raise CoverageGapError(
                f"edge {pair[0]}->{pair[1]} covered {cover[pair]} times, present {mult} times"
            )
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != len(bicliques):
            raise InvalidArgumentError("one label per biclique required")
    return BicliquePartition(g, tuple(bicliques), labels)


def star_partition(g: WeightedDigraph) -> BicliquePartition:
    """One biclique ``({u}, out-neighbours of u)`` per vertex with out-edges."""
    parts = []
    centres = []
    for u in range(g.n):
        if g.out_degree(u):
            parts.append(Biclique((u,), tuple(e.head for e in g.out_edges[u])))
            centres.append(u)
    return BicliquePartition(g, tuple(parts), tuple(centres))


def in_star_partition(g: WeightedDigraph) -> BicliquePartition:
    """One biclique ``(in-neighbours of v, {v})`` per vertex with in-edges."""
    parts = []
    centres = []
    for v in range(g.n):
        if g.in_degree(v):
            parts.append(Biclique(tuple(e.tail for e in g.in_edges[v]), (v,)))
            centres.append(v)
    return BicliquePartition(g, tuple(parts), tuple(centres))


def twin_partition(g: WeightedDigraph) -> BicliquePartition:
    """Merge vertices with identical out-neighbour multisets into one biclique.

    Never larger than the star partition, and much smaller on blow-ups.
    Labels are the smallest vertex of each group.
    """
    groups: dict[tuple[int, ...], list[int]] = {}
    for u in range(g.n):
        if g.out_degree(u):
            key = tuple(sorted(e.head for e in g.out_edges[u]))
            groups.setdefault(key, []).append(u)
    parts = sorted((tuple(us), heads) for heads, us in groups.items())
    return validate_partition(g, parts, [us[0] for us, _ in parts])


def biclique_digraph(partition: BicliquePartition) -> WeightedDigraph:
    """Unweighted digraph with ``Q_i -> Q_j`` iff heads of ``Q_i`` meet tails of ``Q_j``."""
    return build_digraph(partition.r, [(i, j, 1) for (i, j) in partition.links])


def natural_line_partition(g: WeightedDigraph) -> tuple[LineDigraphResult, BicliquePartition]:
    """Partition of the line digraph by the vertices of ``g``.

    Biclique ``Q_i`` has tails = edges into ``i`` and heads = edges out of ``i``,
    for each ``i`` with ``d+(i) * d-(i) > 0``; its label is ``i``.
    """
    ld = line_digraph(g)
    parts = []
    centres = []
    for i in range(g.n):
        if g.out_degree(i) and g.in_degree(i):
            parts.append((
                [ld.vertex_of_edge[e.index] for e in g.in_edges[i]],
                [ld.vertex_of_edge[f.index] for f in g.out_edges[i]],
            ))
            centres.append(i)
    partition = validate_partition(ld.line, parts, centres)
    if all(g.out_degree(v) and g.in_degree(v) for v in range(g.n)):
        got = {(centres[i], centres[j]) for (i, j) in partition.links}
        want = {(e.tail, e.head) for e in g.edges}
        if got != want:
            raise IdentityViolatedError("biclique digraph of the natural partition differs from G")
    return ld, partition


def blow_up_partition(partition: BicliquePartition, blow: BlowUp) -> BicliquePartition:
    """Blow each biclique up along with the digraph."""
    parts = []
    for q in partition.bicliques:
        parts.append((
            [v for u in q.part1 for v in blow.members(u)],
            [v for u in q.part2 for v in blow.members(u)],
        ))
    return validate_partition(blow.graph, parts, partition.labels)


# ---------------------------------------------------------------------------
# reduced digraphs


def require_same_host(g: WeightedDigraph, partition: BicliquePartition) -> None:
    h = partition.host
    if g.n != h.n or [(e.tail, e.head) for e in g.edges] != [(e.tail, e.head) for e in h.edges]:
        raise HostMismatchError("partition was built for a different digraph")


def _resolve_weights(g: WeightedDigraph, vertex_weights) -> tuple[Fraction, ...]:
    """Vertex weights for ``g``.

    ``None`` infers them from the edge weights.  Explicit weights must induce
    the edge weights, except on a unit-weight digraph, which is read as bare
    structure to be weighted by them.
    """
    if vertex_weights is None:
        return infer_vertex_weights(g)
    ws = tuple(vertex_weight_vector(g, vertex_weights))
    if not g.is_unit_weight and any(e.weight != ws[e.head] for e in g.edges):
        raise WeightsNotInducedError("edge weights are not induced by the given vertex weights")
    return ws


def _induced_degrees(g: WeightedDigraph, ws: Sequence[Fraction]) -> list[Fraction]:
    return [sum((ws[e.head] for e in g.out_edges[u]), Fraction(0)) for u in range(g.n)]


def _biclique_weights(partition: BicliquePartition, ws: Sequence[Fraction]) -> list[Fraction]:
    return [sum((ws[u] for u in q.part2), Fraction(0)) for q in partition.bicliques]


def omega_digraph(partition: BicliquePartition, vertex_weights=None) -> ReducedDigraph:
    """Weighted biclique digraph with

    ``w(Q_i -> Q_j) = w(Q_j) * sum_{u in heads(Q_i) & tails(Q_j)} w_u / d_u``

    where ``w(Q) = sum of w_u over heads(Q)`` and ``d_u`` is the induced
    weighted out-degree.
    """
    g = partition.host
    ws = _resolve_weights(g, vertex_weights)
    d = _induced_degrees(g, ws)
    wq = _biclique_weights(partition, ws)
    triples = []
    for (i, j), shared in partition.links.items():
        total = Fraction(0)
        for u, mult in shared:
            if d[u] == 0:
                raise ZeroDegreeError(f"vertex {u} has zero weighted degree")
            total += mult * ws[u] / d[u]
        triples.append((i, j, wq[j] * total))
    return ReducedDigraph(build_digraph(partition.r, triples), "omega", partition, ws)


def theta_digraph(partition: BicliquePartition) -> ReducedDigraph:
    """``w(Q_i -> Q_j) = |heads(Q_j)| * sum_{u shared} 1 / d+(u)``."""
    g = partition.host
    triples = []
    for (i, j), shared in partition.links.items():
        total = Fraction(0)
        for u, mult in shared:
            if g.out_degree(u) == 0:
                raise ZeroDegreeError(f"vertex {u} has out-degree 0")
            total += Fraction(mult, g.out_degree(u))
        triples.append((i, j, len(partition.bicliques[j].part2) * total))
    ones = (Fraction(1),) * g.n
    return ReducedDigraph(build_digraph(partition.r, triples), "theta", partition, ones)


# ---------------------------------------------------------------------------
# tree enumerators through a partition


def _require_positive_out_degree(g: WeightedDigraph) -> None:
    for u in range(g.n):
        if g.out_degree(u) == 0:
            raise ZeroOutDegreeError(f"vertex {u} has out-degree 0")


def tree_enum_via_partition(
    g: WeightedDigraph, partition: BicliquePartition, root: int, vertex_weights=None
) -> Fraction:
    """``t_root(G)`` from the tree enumerators of the ``omega`` digraph.

    ``t_u = w_u * prod_{v != u} d_v / prod_i w(Q_i) * sum_{i: u in heads(Q_i)} t_{Q_i}``.
    With explicit ``vertex_weights`` on a unit-weight ``g`` the result is the
    enumerator of ``g`` reweighted by them.
    """
    require_same_host(g, partition)
    _require_positive_out_degree(g)
    if not 0 <= root < g.n:
        raise VertexOutOfRangeError(f"root {root} out of range")
    if g.in_degree(root) == 0 and g.n > 1:
        raise RootNotCoveredError(
            f"vertex {root} has no incoming edge; use the direct minor instead"
        )
    omega = omega_digraph(partition, vertex_weights)
    ws = omega.vertex_weights
    d = _induced_degrees(g, ws)
    wq = _biclique_weights(partition, ws)
    tq = tree_enumerators(omega.digraph)
    covered = sum((m * tq[i] for i, m in partition.heads_of(root)), Fraction(0))
    factor = ws[root] * prod((d[v] for v in range(g.n) if v != root), start=Fraction(1))
    return factor / prod(wq, start=Fraction(1)) * covered


def kappa_via_partition(g: WeightedDigraph, partition: BicliquePartition, root: int) -> Fraction:
    """Unit-weight form: ``kappa_root(G)`` from the ``theta`` digraph.

    ``kappa_u = prod_{v != u} d+_v / prod_i |heads(Q_i)| * sum_{i: u in heads(Q_i)} t_{Q_i}``.
    Edge weights of ``g`` are ignored.
    """
    require_same_host(g, partition)
    _require_positive_out_degree(g)
    if not 0 <= root < g.n:
        raise VertexOutOfRangeError(f"root {root} out of range")
    if g.in_degree(root) == 0 and g.n > 1:
        raise RootNotCoveredError(
            f"vertex {root} has no incoming edge; use the direct minor instead"
        )
    theta = theta_digraph(partition)
    tq = tree_enumerators(theta.digraph)
    covered = sum((m * tq[i] for i, m in partition.heads_of(root)), Fraction(0))
    num = prod(g.out_degree(v) for v in range(g.n) if v != root)
    den = prod(len(q.part2) for q in partition.bicliques)
    return Fraction(num, den) * covered


def partition_tree_enum_from_host(
    g: WeightedDigraph, partition: BicliquePartition, i: int | None = None, vertex_weights=None
):
    """``t_{Q_i}(omega)`` computed from the host's enumerators.

    ``t_{Q_i} = prod_j w(Q_j) / prod_u d_u * sum_{u in tails(Q_i)} t_u(G)``.
    Returns one value, or a tuple over all bicliques when ``i`` is None.
    """
    require_same_host(g, partition)
    _require_positive_out_degree(g)
    ws = _resolve_weights(g, vertex_weights)
    weighted = induced_digraph(g, ws)
    d = _induced_degrees(g, ws)
    wq = _biclique_weights(partition, ws)
    tu = tree_enumerators(weighted)
    factor = prod(wq, start=Fraction(1)) / prod(d, start=Fraction(1))

    def one(k: int) -> Fraction:
        q = partition.bicliques[k]
        return factor * sum((m * tu[u] for u, m in q.mult1.items()), Fraction(0))

    if i is None:
        return tuple(one(k) for k in range(partition.r))
    return one(i)


def theta_tree_enum_from_host(g: WeightedDigraph, partition: BicliquePartition, i: int | None = None):
    """Unit-weight form: ``t_{Q_i}(theta) = prod |heads| / prod d+ * sum kappa_u``."""
    require_same_host(g, partition)
    _require_positive_out_degree(g)
    kappa = tree_enumerators(g.unweighted())
    factor = Fraction(
        prod(len(q.part2) for q in partition.bicliques), prod(g.out_degrees)
    )

    def one(k: int) -> Fraction:
        q = partition.bicliques[k]
        return factor * sum((m * kappa[u] for u, m in q.mult1.items()), Fraction(0))

    if i is None:
        return tuple(one(k) for k in range(partition.r))
    return one(i)


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x <= 0:
        raise NonIntegerResultError(f"{what} evaluated to {x}, expected a positive integer")
    return int(x)


def eulerian_count_via_partition(
    g: WeightedDigraph, partition: BicliquePartition, i: int | None = None
) -> tuple[int, int]:
    """``(kappa, number of Eulerian circuits)`` of an Eulerian digraph via ``theta``.

    Both are evaluated for every biclique and must agree; ``i`` picks which
    one is reported (they are equal anyway).
    """
    require_same_host(g, partition)
    if g.m == 0 or not is_eulerian(g):
        raise NotEulerianError("digraph is not Eulerian")
    g.require_unit_weights()
    tq = tree_enumerators(theta_digraph(partition).digraph)
    den = prod(len(q.part2) for q in partition.bicliques)
    dplus = prod(g.out_degrees)
    dfact = prod(factorial(d) for d in g.out_degrees)
    results = []
    for k, q in enumerate(partition.bicliques):
        base = tq[k] / (den * len(q.part1))
        results.append((
            _as_int(dplus * base, f"kappa via biclique {k}"),
            _as_int(dfact * base, f"circuit count via biclique {k}"),
        ))
    if len(set(results)) > 1:
        raise IdentityViolatedError(f"biclique-dependent results {results}")
    return results[0 if i is None else i]


# ---------------------------------------------------------------------------
# line-digraph specialisations


def _edge(g: WeightedDigraph, e):
    idx = e if isinstance(e, int) else e.index
    if not 0 <= idx < g.m:
        raise VertexOutOfRangeError(f"edge index {idx} out of range")
    return g.edges[idx]


def line_tree_knuth(g: WeightedDigraph, e) -> Fraction:
    """``kappa_e(L(G))`` for a unit-weight digraph with ``d+ d- > 0`` everywhere.

    ``(kappa_j - sum_{f -> j, f != e} kappa_{t(f)} / d+_j) * prod_v d+_v ** (d-_v - 1)``
    for ``e = i -> j``.  The sum runs over edges into ``j`` other than ``e``.
    """
    g.require_unit_weights()
    for v in range(g.n):
        if g.out_degree(v) * g.in_degree(v) == 0:
            raise DegreeHypothesisViolatedError(f"vertex {v} has d+ * d- = 0")
    edge = _edge(g, e)
    j = edge.head
    kappa = tree_enumerators(g)
    others = sum((kappa[f.tail] for f in g.in_edges[j] if f.index != edge.index), Fraction(0))
    scale = prod(
        (Fraction(g.out_degree(v)) ** (g.in_degree(v) - 1) for v in range(g.n)), start=Fraction(1)
    )
    return (kappa[j] - others / g.out_degree(j)) * scale


def _weighted_host(g: WeightedDigraph, vertex_weights) -> WeightedDigraph:
    if vertex_weights is None:
        return g
    return induced_digraph(g, _resolve_weights(g, vertex_weights))


def line_tree_levine(g: WeightedDigraph, e, vertex_weights=None) -> Fraction:
    """``t_e(L(G))`` for ``e = i -> j`` with ``d-(j) >= 2``.

    ``w_e * t_i(G) * d_j ** (d-_j - 2) * prod_{v != j} d_v ** (d-_v - 1)``
    with the line digraph weighted by the edge weights of ``G``.
    """
    g = _weighted_host(g, vertex_weights)
    for v in range(g.n):
        if g.in_degree(v) == 0:
            raise HypothesisViolatedError(f"vertex {v} has in-degree 0")
    edge = _edge(g, e)
    i, j = edge.tail, edge.head
    if g.in_degree(j) < 2:
        raise HypothesisViolatedError(f"head {j} of edge {edge.index} has in-degree < 2")
    d = g.weighted_degrees
    scale = prod(
        (d[v] ** (g.in_degree(v) - 1) for v in range(g.n) if v != j), start=Fraction(1)
    )
    return edge.weight * tree_enumerator(g, i) * d[j] ** (g.in_degree(j) - 2) * scale


def line_sum_identity_check(g: WeightedDigraph, vertex_weights=None) -> tuple[Fraction, Fraction]:
    """Both sides of ``sum_e t_e(L(G)) = prod_v d_v ** (d-_v - 1) * sum_v t_v(G)``.

    The left side is a sum of principal minors of the line digraph's
    Laplacian; the right side only looks at ``G``.  ``0 ** 0`` is 1.
    """
    g = _weighted_host(g, vertex_weights)
    for v in range(g.n):
        if g.in_degree(v) == 0:
            raise InDegreeZeroError(f"vertex {v} has in-degree 0")
    line = line_digraph(g).line
    lap = laplacian(line)
    lhs = sum((minor_det(lap, {x}, {x}) for x in range(line.n)), Fraction(0))
    d = g.weighted_degrees
    scale = prod((d[v] ** (g.in_degree(v) - 1) for v in range(g.n)), start=Fraction(1))
    rhs = scale * sum(tree_enumerators(g), Fraction(0))
    return lhs, rhs


# ---------------------------------------------------------------------------
# Schur-complement identities


def schur_partition_identity(g: WeightedDigraph, v1: Iterable[int], u: int) -> tuple[Fraction, Fraction]:
    """Both sides of the vertex-split identity for ``V = V1 | V2``, ``u`` in ``V1``.

    ``S1 = L1 - B L2^-1 C`` and ``S2 = L2 - C L1^-1 B`` play the Laplacians of
    two auxiliary digraphs whose tree enumerators are their principal minors:

    ``d_u t_u(S1) - sum_{v in V1, v->u} w_vu t_v(S1)
      = det L1 / det L2 * sum_{v in V2, v->u} w_vu t_v(S2)``
    """
    v1 = sorted(set(v1))
    if u not in v1:
        raise InvalidArgumentError(f"u={u} must belong to V1")
    for v in v1:
        if not 0 <= v < g.n:
            raise VertexOutOfRangeError(f"vertex {v} out of range")
    v2 = [v for v in range(g.n) if v not in set(v1)]
    lap = laplacian(g)
    l1 = lap.submatrix(v1, v1)
    l2 = lap.submatrix(v2, v2)
    s1 = schur_complement(lap, v2)  # indexed like v1
    s2 = schur_complement(lap, v1)  # indexed like v2
    pos1 = {v: k for k, v in enumerate(v1)}
    pos2 = {v: k for k, v in enumerate(v2)}

    def t1(v: int) -> Fraction:
        return minor_det(s1, {pos1[v]}, {pos1[v]})

    def t2(v: int) -> Fraction:
        return minor_det(s2, {pos2[v]}, {pos2[v]})

    lhs = g.weighted_degree(u) * t1(u)
    rhs_sum = Fraction(0)
    for v in range(g.n):
        w = g.edge_weight(v, u)
        if not w:
            continue
        if v in pos1:
            lhs -= w * t1(v)
        else:
            rhs_sum += w * t2(v)
    return lhs, det(l1) / det(l2) * rhs_sum


def undirected_tree_count(
    h: UndirectedGraph, partition: BicliquePartition | None = None, i: int | None = None
) -> int:
    """Spanning trees of a connected undirected graph via a partition of its bidirection.

    ``prod_v deg_v / prod_j |heads(Q_j)| * t_{Q_i}(theta) / |tails(Q_i)|``,
    checked to agree for every ``i``.  Defaults to the star partition.
    """
    if not h.is_unit_weight:
        raise NonUnitWeightsError("spanning-tree counting needs an unweighted graph")
    if not is_connected(h):
        raise DisconnectedError("graph is not connected")
    h0 = bidirect(h)
    if h.n == 1:
        return 1
    if partition is None:
        partition = star_partition(h0)
    else:
        require_same_host(h0, partition)
    tq = tree_enumerators(theta_digraph(partition).digraph)
    num = prod(h0.out_degrees)
    den = prod(len(q.part2) for q in partition.bicliques)
    values = [
        _as_int(Fraction(num, den) * tq[k] / len(q.part1), f"tree count via biclique {k}")
        for k, q in enumerate(partition.bicliques)
    ]
    if len(set(values)) > 1:
        raise IdentityViolatedError(f"biclique-dependent tree counts {values}")
    return values[0 if i is None else i]


# ---------------------------------------------------------------------------
# partition files


def parse_partition(text: str, g: WeightedDigraph) -> BicliquePartition:
    """Parse ``Q <id>: [tails] -> [heads]`` lines and validate against ``g``."""
    parts = []
    ids = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, body = line.split(":", 1)
            tag, ident = head.split()
            if tag != "Q":
                raise ValueError
            left, right = body.split("->")
            tails = _parse_list(left)
            heads = _parse_list(right)
            ids.append(int(ident))
        except ValueError:
            raise GraphFormatError(f"expected 'Q <id>: [tails] -> [heads]', got {line!r}", lineno) from None
        parts.append((tails, heads))
    return validate_partition(g, parts, ids)


def _parse_list(s: str) -> list[int]:
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError
    inner = s[1:-1].replace(",", " ").split()
    return [int(x) for x in inner]


def format_partition(partition: BicliquePartition) -> str:
    labels = partition.labels or tuple(range(partition.r))
    lines = []
    for lab, q in zip(labels, partition.bicliques):
        lines.append(
            f"Q {lab}: [{', '.join(map(str, q.part1))}] -> [{', '.join(map(str, q.part2))}]"
        )
    return "\n".join(lines) + ("\n" if lines else "")
