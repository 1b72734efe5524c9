"""Random walks on weighted digraphs, computed exactly.

Kemeny's constant is taken from the characteristic polynomial ``q`` of the
transition matrix: with ``q(x) = (x - 1) r(x)`` the sum of ``1/(1 - lambda)``
over the non-unit eigenvalues is ``r'(1)/r(1) = q''(1) / (2 q'(1))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .biclique import BicliquePartition, require_same_host, theta_digraph
from .errors import (
    IdentityViolatedError,
    NotStronglyConnectedError,
    ReducedNotStronglyConnectedError,
    TooLargeError,
    ZeroDegreeError,
)
from .graph import WeightedDigraph, is_strongly_connected, iterated_line_digraph
from .linalg import Matrix, char_poly, inverse, minor_det, solve

__all__ = [
    "MarkovAnalytics",
    "transition_matrix",
    "stationary_distribution",
    "mean_first_passage",
    "kemeny_constant",
    "kemeny_definitional",
    "kemeny_trace",
    "analyze",
    "stationary_via_partition",
    "kemeny_via_partition",
    "line_stationary",
    "iterated_line_kemeny",
    "DEFAULT_LINE_VERTEX_CAP",
]

DEFAULT_LINE_VERTEX_CAP = 64


@dataclass(frozen=True)
class MarkovAnalytics:
    pi: tuple[Fraction, ...]
    mfpt: Matrix
    kemeny: Fraction


def transition_matrix(g: WeightedDigraph) -> Matrix:
    """Row-stochastic ``P`` with ``P[i][j] = w(i -> j) / d_i``."""
    d = g.weighted_degrees
    rows = [[Fraction(0)] * g.n for _ in range(g.n)]
    for i in range(g.n):
        if d[i] == 0:
            raise ZeroDegreeError(f"vertex {i} has no outgoing edges")
    for e in g.edges:
        rows[e.tail][e.head] += e.weight / d[e.tail]
    return Matrix(rows, g.n)


def _require_strong(g: WeightedDigraph) -> None:
    if g.n == 0 or not is_strongly_connected(g):
        raise NotStronglyConnectedError("random walk needs a strongly connected digraph")


def _stationary_from_p(p: Matrix) -> tuple[Fraction, ...]:
    n = p.nrows
    i_minus_p = Matrix.identity(n) - p
    minors = [minor_det(i_minus_p, {i}, {i}) for i in range(n)]
    total = sum(minors, Fraction(0))
    pi = tuple(m / total for m in minors)
    if p.left_apply(pi) != pi:
        raise IdentityViolatedError("minor formula did not produce a fixed vector")
    return pi


def stationary_distribution(g: WeightedDigraph) -> tuple[Fraction, ...]:
    """``pi_i = det(I - P)(i, i) / sum_j det(I - P)(j, j)``; checked against ``pi P = pi``."""
    _require_strong(g)
    return _stationary_from_p(transition_matrix(g))


def _mfpt_from_p(p: Matrix) -> Matrix:
    n = p.nrows
    i_minus_p = Matrix.identity(n) - p
    rows = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        others = [i for i in range(n) if i != j]
        m = solve(i_minus_p.submatrix(others, others), [1] * len(others))
        for i, v in zip(others, m):
            rows[i][j] = v
    return Matrix(rows, n)


def mean_first_passage(g: WeightedDigraph) -> Matrix:
    """``m[i][j]``: expected steps from ``i`` to first reach ``j``; diagonal is 0."""
    _require_strong(g)
    return _mfpt_from_p(transition_matrix(g))


def _kemeny_from_p(p: Matrix) -> Fraction:
    q = char_poly(p)
    d1 = q.derivative()
    return d1.derivative()(1) / (2 * d1(1))


def kemeny_constant(g: WeightedDigraph) -> Fraction:
    """Kemeny's constant from derivatives of the characteristic polynomial at 1."""
    _require_strong(g)
    return _kemeny_from_p(transition_matrix(g))


def kemeny_definitional(g: WeightedDigraph, start: int | None = None):
    """``sum_{j != i} m[i][j] pi_j``; one value, or a tuple over all starts."""
    _require_strong(g)
    p = transition_matrix(g)
    pi = _stationary_from_p(p)
    m = _mfpt_from_p(p)
    values = tuple(sum((m[i, j] * pi[j] for j in range(g.n)), Fraction(0)) for i in range(g.n))
    return values if start is None else values[start]


def kemeny_trace(g: WeightedDigraph) -> Fraction:
    """``trace((I - P + 1 pi^T)^-1) - 1``, the fundamental-matrix form."""
    _require_strong(g)
    p = transition_matrix(g)
    pi = _stationary_from_p(p)
    ones_pi = Matrix([list(pi) for _ in range(g.n)], g.n)
    z = inverse(Matrix.identity(g.n) - p + ones_pi)
    return z.trace() - 1


def analyze(g: WeightedDigraph) -> MarkovAnalytics:
    _require_strong(g)
    p = transition_matrix(g)
    return MarkovAnalytics(_stationary_from_p(p), _mfpt_from_p(p), _kemeny_from_p(p))


# ---------------------------------------------------------------------------
# reductions


def _theta_chain(g: WeightedDigraph, partition: BicliquePartition) -> Matrix:
    require_same_host(g, partition)
    _require_strong(g)
    g.require_unit_weights()
    theta = theta_digraph(partition).digraph
    if not is_strongly_connected(theta):
        raise ReducedNotStronglyConnectedError("reduced digraph is not strongly connected")
    return transition_matrix(theta)


def stationary_via_partition(g: WeightedDigraph, partition: BicliquePartition) -> tuple[Fraction, ...]:
    """``pi_u(G) = sum_{i: u in heads(Q_i)} pi_{Q_i}(theta) / |heads(Q_i)|``."""
    p_theta = _theta_chain(g, partition)
    pi_q = _stationary_from_p(p_theta)
    out = []
    for u in range(g.n):
        out.append(sum(
            (m * pi_q[i] / len(partition.bicliques[i].part2) for i, m in partition.heads_of(u)),
            Fraction(0),
        ))
    return tuple(out)


def kemeny_via_partition(g: WeightedDigraph, partition: BicliquePartition) -> Fraction:
    """``K(G) = K(theta) + n - r``."""
    p_theta = _theta_chain(g, partition)
    return _kemeny_from_p(p_theta) + g.n - partition.r


def line_stationary(g: WeightedDigraph) -> tuple[dict[int, Fraction], Fraction]:
    """Closed forms on the line digraph of a unit-weight strongly connected ``g``.

    Edge ``e = i -> j`` gets ``pi_i(G) / d+(i)``; ``K(L(G)) = K(G) + m - n``.
    """
    _require_strong(g)
    g.require_unit_weights()
    pi = stationary_distribution(g)
    per_edge = {e.index: pi[e.tail] / g.out_degree(e.tail) for e in g.edges}
    return per_edge, kemeny_constant(g) + g.m - g.n


def iterated_line_kemeny(
    g: WeightedDigraph, s: int, max_vertices: int = DEFAULT_LINE_VERTEX_CAP
) -> Fraction:
    """``K(L^s(G)) = K(G) + |V(L^s(G))| - n``, cross-checked on the built digraph.

    Raises ``TooLargeError`` if some iterate would exceed ``max_vertices``.
    """
    _require_strong(g)
    g.require_unit_weights()
    big = iterated_line_digraph(g, s, max_vertices)
    if big.n > max_vertices:
        raise TooLargeError(f"L^{s}(G) has {big.n} vertices (cap {max_vertices})")
    closed = kemeny_constant(g) + big.n - g.n
    direct = kemeny_constant(big)
    if closed != direct:
        raise IdentityViolatedError(f"closed form {closed} != direct {direct}")
    return closed
