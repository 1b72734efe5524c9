"""Weighted digraphs and the constructions the reduction formulas act on.

Vertices are dense integers ``0..n-1``.  Edges keep construction order, and
parallel edges stay distinct (their weights are summed only when a matrix is
formed).  Self-loops are rejected.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    GraphFormatError,
    InvalidArgumentError,
    NonPositiveWeightError,
    NonUnitWeightsError,
    SelfLoopError,
    TooLargeError,
    VertexOutOfRangeError,
    WeightsNotInducedError,
)
from .linalg import Matrix, as_rational, format_rational

__all__ = [
    "Edge",
    "WeightedDigraph",
    "UndirectedGraph",
    "LineDigraphResult",
    "BlowUp",
    "build_digraph",
    "build_undirected",
    "laplacian",
    "line_digraph",
    "iterated_line_digraph",
    "blow_up",
    "bidirect",
    "induced_digraph",
    "infer_vertex_weights",
    "vertex_weight_vector",
    "is_strongly_connected",
    "is_eulerian",
    "is_connected",
    "parse_graph",
    "format_graph",
    "read_graph",
    "write_graph",
]


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    weight: Fraction
    index: int


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    n: int
    edges: tuple[Edge, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @cached_property
    def out_edges(self) -> tuple[tuple[Edge, ...], ...]:
        out: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            out[e.tail].append(e)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_edges(self) -> tuple[tuple[Edge, ...], ...]:
        inc: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            inc[e.head].append(e)
        return tuple(tuple(x) for x in inc)

    @property
    def m(self) -> int:
        return len(self.edges)

    def out_degree(self, v: int) -> int:
        return len(self.out_edges[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_edges[v])

    def weighted_degree(self, v: int) -> Fraction:
        return sum((e.weight for e in self.out_edges[v]), Fraction(0))

    @cached_property
    def out_degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.out_edges)

    @cached_property
    def in_degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.in_edges)

    @cached_property
    def weighted_degrees(self) -> tuple[Fraction, ...]:
        return tuple(self.weighted_degree(v) for v in range(self.n))

    def edge_weight(self, u: int, v: int) -> Fraction:
        """Total weight of all edges ``u -> v`` (0 if none)."""
        return sum((e.weight for e in self.out_edges[u] if e.head == v), Fraction(0))

    def has_edge(self, u: int, v: int) -> bool:
        return any(e.head == v for e in self.out_edges[u])

    def edge_multiplicity(self, u: int, v: int) -> int:
        return sum(1 for e in self.out_edges[u] if e.head == v)

    @property
    def is_unit_weight(self) -> bool:
        return all(e.weight == 1 for e in self.edges)

    @property
    def is_simple(self) -> bool:
        pairs = [(e.tail, e.head) for e in self.edges]
        return len(pairs) == len(set(pairs))

    def total_weight(self) -> Fraction:
        return sum((e.weight for e in self.edges), Fraction(0))

    def triples(self) -> list[tuple[int, int, Fraction]]:
        return [(e.tail, e.head, e.weight) for e in self.edges]

    def unweighted(self) -> "WeightedDigraph":
        return build_digraph(self.n, [(e.tail, e.head, 1) for e in self.edges], self.labels)

    def require_unit_weights(self) -> None:
        if not self.is_unit_weight:
            raise NonUnitWeightsError("operation is defined for unit-weight digraphs only")

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.n == other.n and self.triples() == other.triples()

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.triples())))

    def __repr__(self) -> str:
        return f"WeightedDigraph(n={self.n}, m={self.m})"


def build_digraph(
    n: int,
    edges: Iterable[tuple[int, int] | tuple[int, int, object]],
    labels: Sequence[str] | None = None,
) -> WeightedDigraph:
    """Build a digraph from ``(tail, head[, weight])`` triples; weight defaults to 1."""
    if n < 0:
        raise InvalidArgumentError("vertex count must be non-negative")
    out = []
    for idx, item in enumerate(edges):
        if len(item) == 2:
            tail, head = item
            weight = Fraction(1)
        else:
            tail, head, weight = item
            weight = as_rational(weight)
        if not (0 <= tail < n and 0 <= head < n):
            raise VertexOutOfRangeError(f"edge {idx} ({tail}->{head}) out of range for n={n}")
        if tail == head:
            raise SelfLoopError(f"edge {idx} is a self-loop at vertex {tail}")
        if weight <= 0:
            raise NonPositiveWeightError(f"edge {idx} has non-positive weight {weight}")
        out.append(Edge(int(tail), int(head), weight, idx))
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise InvalidArgumentError("one label per vertex required")
    return WeightedDigraph(n, tuple(out), labels)


def laplacian(g: WeightedDigraph) -> Matrix:
    """``L = D - A`` with parallel edge weights summed; rows sum to zero."""
    rows = [[Fraction(0)] * g.n for _ in range(g.n)]
    for e in g.edges:
        rows[e.tail][e.head] -= e.weight
        rows[e.tail][e.tail] += e.weight
    return Matrix(rows, g.n)


@dataclass(frozen=True)
class LineDigraphResult:
    line: WeightedDigraph
    # vertex_of_edge[e.index] is the line-digraph vertex standing for edge e
    vertex_of_edge: tuple[int, ...]

    @property
    def edge_of_vertex(self) -> tuple[int, ...]:
        inv = [0] * len(self.vertex_of_edge)
        for e, v in enumerate(self.vertex_of_edge):
            inv[v] = e
        return tuple(inv)


def line_digraph(
    g: WeightedDigraph, vertex_weights: Sequence | Mapping[int, object] | None = None
) -> LineDigraphResult:
    """Line digraph; vertex ``e`` of the result is edge ``e`` of ``g``.

    The edge ``e -> f`` carries the weight of ``f`` in ``g`` unless
    ``vertex_weights`` (indexed by edge index of ``g``) overrides it, so the
    result's weights are induced by the edge weights of ``g``.
    """
    if vertex_weights is None:
        target = [e.weight for e in g.edges]
    else:
        target = [as_rational(vertex_weights[e.index]) for e in g.edges]
    triples = []
    for e in g.edges:
        for f in g.out_edges[e.head]:
            triples.append((e.index, f.index, target[f.index]))
    return LineDigraphResult(build_digraph(g.m, triples), tuple(range(g.m)))


def iterated_line_digraph(g: WeightedDigraph, s: int, max_vertices: int | None = None) -> WeightedDigraph:
    if s < 0:
        raise InvalidArgumentError("iteration count must be non-negative")
    for _ in range(s):
        if max_vertices is not None and g.m > max_vertices:
            raise TooLargeError(f"line digraph would have {g.m} vertices (cap {max_vertices})")
        g = line_digraph(g).line
    return g


@dataclass(frozen=True)
class BlowUp:
    graph: WeightedDigraph
    # vertex_class[v] is the vertex of the original digraph that v copies
    vertex_class: tuple[int, ...]
    k: int

    def members(self, i: int) -> tuple[int, ...]:
        return tuple(range(i * self.k, (i + 1) * self.k))


def blow_up(g: WeightedDigraph, k: int) -> BlowUp:
    """k-blow-up: vertex ``i`` becomes ``i*k .. i*k+k-1``; each edge a ``k x k`` bundle."""
    if k < 1:
        raise InvalidArgumentError("blow-up factor must be positive")
    g.require_unit_weights()
    triples = []
    for e in g.edges:
        for a in range(k):
            for b in range(k):
                triples.append((e.tail * k + a, e.head * k + b, 1))
    classes = tuple(v // k for v in range(g.n * k))
    return BlowUp(build_digraph(g.n * k, triples), classes, k)


# ---------------------------------------------------------------------------
# undirected graphs


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def degree(self, v: int) -> int:
        return sum(1 for i, j, _ in self.edges if v in (i, j))

    @property
    def is_unit_weight(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)


def build_undirected(n: int, edges: Iterable[tuple]) -> UndirectedGraph:
    seen = set()
    out = []
    for item in edges:
        i, j = item[0], item[1]
        w = as_rational(item[2]) if len(item) > 2 else Fraction(1)
        if not (0 <= i < n and 0 <= j < n):
            raise VertexOutOfRangeError(f"edge {{{i},{j}}} out of range for n={n}")
        if i == j:
            raise SelfLoopError(f"loop at vertex {i}")
        if w <= 0:
            raise NonPositiveWeightError(f"edge {{{i},{j}}} has non-positive weight {w}")
        key = frozenset((i, j))
        if key in seen:
            raise InvalidArgumentError(f"duplicate undirected edge {{{i},{j}}}; graph must be simple")
        seen.add(key)
        out.append((int(i), int(j), w))
    return UndirectedGraph(n, tuple(out))


def bidirect(h: UndirectedGraph) -> WeightedDigraph:
    """Replace each edge ``{i, j}`` of weight w by ``i -> j`` and ``j -> i``, both weight w."""
    triples = []
    for i, j, w in h.edges:
        triples.append((i, j, w))
        triples.append((j, i, w))
    return build_digraph(h.n, triples)


def is_connected(h: UndirectedGraph) -> bool:
    return is_strongly_connected(bidirect(h))


# ---------------------------------------------------------------------------
# vertex-induced weights


def vertex_weight_vector(g: WeightedDigraph, vertex_weights) -> list[Fraction]:
    if isinstance(vertex_weights, Mapping):
        ws = [as_rational(vertex_weights.get(v, 1)) for v in range(g.n)]
    else:
        ws = [as_rational(x) for x in vertex_weights]
    if len(ws) != g.n:
        raise InvalidArgumentError(f"expected {g.n} vertex weights, got {len(ws)}")
    if any(w <= 0 for w in ws):
        raise NonPositiveWeightError("vertex weights must be positive")
    return ws


def induced_digraph(g: WeightedDigraph, vertex_weights) -> WeightedDigraph:
    """Same edges as ``g``, each ``u -> v`` reweighted to ``vertex_weights[v]``."""
    ws = vertex_weight_vector(g, vertex_weights)
    return build_digraph(g.n, [(e.tail, e.head, ws[e.head]) for e in g.edges], g.labels)


def infer_vertex_weights(g: WeightedDigraph) -> tuple[Fraction, ...]:
    """Vertex weights inducing the edge weights of ``g``.

    Every edge into ``v`` must carry the same weight.  Vertices without
    incoming edges get weight 1 (their weight never enters an edge).
    """
    ws = []
    for v in range(g.n):
        incoming = {e.weight for e in g.in_edges[v]}
        if len(incoming) > 1:
            raise WeightsNotInducedError(
                f"edges into vertex {v} carry different weights {sorted(incoming)}"
            )
        ws.append(incoming.pop() if incoming else Fraction(1))
    return tuple(ws)


# ---------------------------------------------------------------------------
# connectivity


def _reach(n: int, start: int, nbrs) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in nbrs(u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def is_strongly_connected(g: WeightedDigraph) -> bool:
    if g.n <= 1:
        return True
    fwd = _reach(g.n, 0, lambda u: (e.head for e in g.out_edges[u]))
    if len(fwd) != g.n:
        return False
    back = _reach(g.n, 0, lambda u: (e.tail for e in g.in_edges[u]))
    return len(back) == g.n


def is_eulerian(g: WeightedDigraph) -> bool:
    """Strongly connected with ``d+(v) == d-(v)`` everywhere."""
    return g.out_degrees == g.in_degrees and is_strongly_connected(g)


# ---------------------------------------------------------------------------
# text format


def parse_graph(text: str) -> WeightedDigraph:
    """Parse ``digraph <n>`` followed by ``<tail> <head> [<p>/<q>]`` lines."""
    n = None
    triples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "digraph":
                raise GraphFormatError("expected header 'digraph <n>'", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n < 0:
                raise GraphFormatError("vertex count must be non-negative", lineno)
            continue
        if len(parts) not in (2, 3):
            raise GraphFormatError(f"expected '<tail> <head> <weight>', got {line!r}", lineno)
        try:
            tail, head = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"bad vertex id in {line!r}", lineno) from None
        try:
            weight = Fraction(parts[2]) if len(parts) == 3 else Fraction(1)
        except (ValueError, ZeroDivisionError):
            raise GraphFormatError(f"bad weight {parts[2]!r}", lineno) from None
        if not (0 <= tail < n and 0 <= head < n):
            raise GraphFormatError(f"vertex out of range in {line!r} (n={n})", lineno)
        if tail == head:
            raise GraphFormatError(f"self-loop {tail}->{head} (SelfLoop)", lineno)
        if weight <= 0:
            raise GraphFormatError(f"non-positive weight {parts[2]} (NonPositiveWeight)", lineno)
        triples.append((tail, head, weight))
    if n is None:
        raise GraphFormatError("missing 'digraph <n>' header")
    return build_digraph(n, triples)


def format_graph(g: WeightedDigraph) -> str:
    lines = [f"digraph {g.n}"]
    lines += [f"{e.tail} {e.head} {format_rational(e.weight)}" for e in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> WeightedDigraph:
    return parse_graph(Path(path).read_text())


def write_graph(g: WeightedDigraph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g))
