"""Seeded random and exhaustive digraph generators for tests and ``verify``.

Every generator takes a :class:`random.Random`; nothing touches global state.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator

from .graph import UndirectedGraph, WeightedDigraph, build_digraph, build_undirected


def random_rational(rng: random.Random, max_num: int = 9, max_den: int = 5) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def _weight(rng: random.Random, weights: str):
    if weights == "unit":
        return 1
    if weights == "int":
        return rng.randint(1, 20)
    if weights == "rational":
        return random_rational(rng)
    raise ValueError(f"unknown weight mode {weights!r}")


def random_digraph(
    rng: random.Random,
    n: int,
    p: float,
    weights: str = "unit",
    min_out: int = 0,
    parallel: float = 0.0,
) -> WeightedDigraph:
    """Each ordered pair is an edge with probability ``p``.

    ``min_out`` tops up out-degrees; ``parallel`` is the chance of doubling an edge.
    """
    pairs = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < p:
                pairs.append((i, j))
    if n > 1:
        for i in range(n):
            have = {j for (a, j) in pairs if a == i}
            missing = [j for j in range(n) if j != i and j not in have]
            rng.shuffle(missing)
            while len(have) < min(min_out, n - 1):
                j = missing.pop()
                have.add(j)
                pairs.append((i, j))
    extra = [pr for pr in pairs if parallel and rng.random() < parallel]
    pairs.extend(extra)
    rng.shuffle(pairs)
    return build_digraph(n, [(i, j, _weight(rng, weights)) for i, j in pairs])


def random_strongly_connected(
    rng: random.Random, n: int, p: float, weights: str = "unit", parallel: float = 0.0
) -> WeightedDigraph:
    """A random Hamiltonian cycle plus independent extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = set()
    if n > 1:
        pairs = {(order[k], order[(k + 1) % n]) for k in range(n)}
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < p:
                pairs.add((i, j))
    pairs = sorted(pairs)
    extra = [pr for pr in pairs if parallel and rng.random() < parallel]
    pairs = pairs + extra
    rng.shuffle(pairs)
    return build_digraph(n, [(i, j, _weight(rng, weights)) for i, j in pairs])


def random_eulerian(rng: random.Random, n: int, cycles: int, max_edges: int | None = None) -> WeightedDigraph:
    """Union of random directed cycles through a spanning cycle; unit weights.

    Parallel edges arise naturally when cycles overlap.
    """
    order = list(range(n))
    rng.shuffle(order)
    edges = [(order[k], order[(k + 1) % n]) for k in range(n)] if n > 1 else []
    for _ in range(cycles):
        length = rng.randint(2, n) if n >= 2 else 0
        if length < 2:
            break
        cyc = rng.sample(range(n), length)
        new = [(cyc[k], cyc[(k + 1) % length]) for k in range(length)]
        if max_edges is not None and len(edges) + len(new) > max_edges:
            continue
        edges.extend(new)
    rng.shuffle(edges)
    return build_digraph(n, edges)


def random_connected_undirected(rng: random.Random, n: int, p: float) -> UndirectedGraph:
    """Random spanning tree plus independent extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for k in range(1, n):
        a, b = order[k], order[rng.randrange(k)]
        edges.add((min(a, b), max(a, b)))
    for a, b in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((a, b))
    return build_undirected(n, sorted(edges))


def exhaustive_digraphs(max_n: int = 4, max_edges: int = 8) -> Iterator[WeightedDigraph]:
    """Every simple unit-weight digraph on ``1..max_n`` vertices with ``<= max_edges`` edges."""
    for n in range(1, max_n + 1):
        pairs = list(permutations(range(n), 2))
        for k in range(min(max_edges, len(pairs)) + 1):
            for subset in combinations(pairs, k):
                yield build_digraph(n, subset)


def random_twinned(rng: random.Random, base_n: int, n: int, p: float) -> WeightedDigraph:
    """Uneven blow-up of a random strongly connected base digraph.

    Each of the ``n >= base_n`` vertices copies one base vertex (every base
    vertex gets at least one copy) and inherits its out-neighbourhood over
    all copies, so copies of one base vertex are out-twins.  The result is
    simple and strongly connected.
    """
    base = random_strongly_connected(rng, base_n, p)
    cls = list(range(base_n)) + [rng.randrange(base_n) for _ in range(n - base_n)]
    rng.shuffle(cls)
    members: dict[int, list[int]] = {}
    for v, c in enumerate(cls):
        members.setdefault(c, []).append(v)
    pairs = sorted({(u, v) for e in base.edges for u in members[e.tail] for v in members[e.head]})
    rng.shuffle(pairs)
    return build_digraph(n, pairs)
