"""Oriented spanning trees and Eulerian circuits.

Tree enumerators come from Laplacian minors; the enumeration routines below
are independent brute-force oracles for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, Mapping

from .errors import NotEulerianError, TooLargeError, VertexOutOfRangeError
from .graph import WeightedDigraph, is_eulerian, laplacian
from .linalg import adjugate, minor_det

__all__ = [
    "Arborescence",
    "tree_enumerator",
    "tree_enumerators",
    "signed_minor",
    "enumerate_arborescences",
    "arborescence_sum",
    "count_eulerian_circuits",
    "enumerate_eulerian_circuits",
    "DEFAULT_ARBORESCENCE_CAP",
    "DEFAULT_EULER_EDGE_CAP",
]

DEFAULT_ARBORESCENCE_CAP = 10**7
DEFAULT_EULER_EDGE_CAP = 12


@dataclass(frozen=True)
class Arborescence:
    """Spanning tree with every edge pointing towards ``root``."""

    root: int
    # non-root vertex -> index of its unique outgoing tree edge
    chosen_edge: Mapping[int, int]

    def weight(self, g: WeightedDigraph) -> Fraction:
        return prod((g.edges[i].weight for i in self.chosen_edge.values()), start=Fraction(1))

    def edge_indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.chosen_edge.values()))


def _check_vertex(g: WeightedDigraph, v: int) -> None:
    if not 0 <= v < g.n:
        raise VertexOutOfRangeError(f"vertex {v} out of range for n={g.n}")


def tree_enumerator(g: WeightedDigraph, root: int) -> Fraction:
    """``t_root(G)``: the principal Laplacian minor at ``root``."""
    _check_vertex(g, root)
    return minor_det(laplacian(g), {root}, {root})


def signed_minor(g: WeightedDigraph, i: int, j: int) -> Fraction:
    """``det L(i, j)``, which equals ``(-1)**(i+j) * t_i(G)``."""
    _check_vertex(g, i)
    _check_vertex(g, j)
    return minor_det(laplacian(g), {i}, {j})


def tree_enumerators(g: WeightedDigraph) -> tuple[Fraction, ...]:
    """``t_u(G)`` for every root at once, read off one adjugate.

    Every row of ``adj(L_G)`` equals ``(t_0, ..., t_{n-1})``.
    """
    if g.n == 0:
        return ()
    adj = adjugate(laplacian(g))
    return adj.row(0)


# ---------------------------------------------------------------------------
# brute-force oracle


def _arborescence_search(g: WeightedDigraph, root: int) -> Iterator[dict[int, int]]:
    order = [v for v in range(g.n) if v != root]
    succ: dict[int, int] = {}

    def closes_cycle(v: int, w: int) -> bool:
        # would v -> w close a cycle among already chosen edges?
        while w != root:
            if w == v:
                return True
            if w not in succ:
                return False
            w = succ[w]
        return False

    chosen: dict[int, int] = {}

    def rec(k: int) -> Iterator[dict[int, int]]:
        if k == len(order):
            yield dict(chosen)
            return
        v = order[k]
        for e in g.out_edges[v]:
            if closes_cycle(v, e.head):
                continue
            succ[v] = e.head
            chosen[v] = e.index
            yield from rec(k + 1)
            del succ[v]
            del chosen[v]

    yield from rec(0)


def enumerate_arborescences(
    g: WeightedDigraph, root: int, cap: int = DEFAULT_ARBORESCENCE_CAP
) -> list[Arborescence]:
    """All arborescences rooted at ``root``.

    Picks one out-edge per non-root vertex, discarding choices that close a
    cycle (an acyclic choice function reaches the root from everywhere).
    ``cap`` bounds the number of raw choice functions.
    """
    _check_vertex(g, root)
    space = prod(g.out_degree(v) for v in range(g.n) if v != root)
    if space > cap:
        raise TooLargeError(f"{space} candidate edge choices exceed cap {cap}")
    return [Arborescence(root, c) for c in _arborescence_search(g, root)]


def arborescence_sum(g: WeightedDigraph, root: int, cap: int = DEFAULT_ARBORESCENCE_CAP) -> Fraction:
    """Sum of edge-weight products over all arborescences at ``root``."""
    return sum((a.weight(g) for a in enumerate_arborescences(g, root, cap)), Fraction(0))


# ---------------------------------------------------------------------------
# Eulerian circuits


def _require_eulerian(g: WeightedDigraph) -> None:
    if g.m == 0:
        raise NotEulerianError("digraph has no edges")
    if not is_eulerian(g):
        raise NotEulerianError("digraph is not Eulerian (needs strong connectivity and d+ = d-)")
    g.require_unit_weights()


def count_eulerian_circuits(g: WeightedDigraph) -> int:
    """BEST theorem: ``kappa_u(G) * prod_v (d+(v) - 1)!``.

    Circuits are counted up to cyclic rotation; parallel edges are distinct.
    """
    _require_eulerian(g)
    kappa = tree_enumerator(g, 0)
    assert kappa.denominator == 1
    return int(kappa) * prod(factorial(d - 1) for d in g.out_degrees)


def enumerate_eulerian_circuits(g: WeightedDigraph, max_edges: int = DEFAULT_EULER_EDGE_CAP) -> int:
    """Backtracking count of Eulerian trails that start with edge 0.

    Each circuit uses edge 0 exactly once, so anchoring there counts every
    rotation class once.
    """
    _require_eulerian(g)
    if g.m > max_edges:
        raise TooLargeError(f"{g.m} edges exceed the enumeration cap {max_edges}")
    used = [False] * g.m
    start = g.edges[0]
    used[0] = True

    def rec(at: int, remaining: int) -> int:
        if remaining == 0:
            return 1 if at == start.tail else 0
        total = 0
        for e in g.out_edges[at]:
            if not used[e.index]:
                used[e.index] = True
                total += rec(e.head, remaining - 1)
                used[e.index] = False
        return total

    return rec(start.head, g.m - 1)
