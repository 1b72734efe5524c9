from fractions import Fraction
from itertools import permutations
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicliquetrees import (
    Matrix,
    Polynomial,
    adjugate,
    as_rational,
    char_poly,
    det,
    format_rational,
    inverse,
    laplacian,
    minor_det,
    nullspace,
    rank,
    schur_complement,
    solve,
)
from bicliquetrees.errors import (
    IndexOutOfRangeError,
    NotSquareError,
    SingularBlockError,
    SingularError,
)
from bicliquetrees.markov import transition_matrix

F = Fraction


def leibniz(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        total += (-1) ** inversions * prod((rows[i][perm[i]] for i in range(n)), start=Fraction(1))
    return total


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def square(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    return Matrix([[draw(rationals) for _ in range(n)] for _ in range(n)], n)


@st.composite
def low_rank(draw, max_n=5):
    # product of n x k and k x n factors has rank <= k
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n - 1))
    a = Matrix([[draw(rationals) for _ in range(k)] for _ in range(n)], k)
    b = Matrix([[draw(rationals) for _ in range(n)] for _ in range(k)], n)
    return a @ b


def test_det_examples(k3):
    assert det(Matrix([[2, -1], [-1, 2]])) == 3
    assert det(Matrix([], 0)) == 1
    assert det(laplacian(k3)) == 0


def test_det_rejects_non_square():
    with pytest.raises(NotSquareError):
        det(Matrix([[1, 2, 3], [4, 5, 6]]))


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        Matrix([[0.5]])


@settings(max_examples=150, deadline=None)
@given(square())
def test_det_matches_leibniz(a):
    expected = leibniz(a.to_lists())
    assert det(a) == expected
    assert det(a, method="bareiss") == expected
    assert det(a, method="gauss") == expected


@settings(max_examples=80, deadline=None)
@given(square(4), st.data())
def test_det_multiplicative_and_transpose(a, data):
    n = a.nrows
    b = Matrix([[data.draw(rationals) for _ in range(n)] for _ in range(n)], n)
    assert det(a @ b) == det(a) * det(b)
    assert det(a.T) == det(a)


def test_minor_examples(c3, k3):
    assert minor_det(laplacian(c3), {0}, {0}) == 1
    assert minor_det(laplacian(k3), {0}, {0}) == 3
    assert minor_det(laplacian(k3), {0}, {1}) == -3


def test_minor_index_checks(k3):
    with pytest.raises(IndexOutOfRangeError):
        minor_det(laplacian(k3), {3}, {0})
    with pytest.raises(IndexOutOfRangeError):
        minor_det(laplacian(k3), {0, 1}, {0})


def test_inverse_examples(c3):
    assert inverse(Matrix.identity(3)) == Matrix.identity(3)
    assert inverse(Matrix([[2, -1], [-1, 2]])) == Matrix([[2, 1], [1, 2]]).scale(F(1, 3))
    with pytest.raises(SingularError):
        inverse(laplacian(c3))


@settings(max_examples=100, deadline=None)
@given(square())
def test_inverse_and_solve(a):
    if det(a) == 0:
        with pytest.raises(SingularError):
            inverse(a)
        return
    inv = inverse(a)
    assert a @ inv == Matrix.identity(a.nrows)
    b = [F(i + 1, 2) for i in range(a.nrows)]
    assert a.apply(solve(a, b)) == tuple(b)


@settings(max_examples=150, deadline=None)
@given(st.one_of(square(), low_rank()))
def test_adjugate_against_cofactors(a):
    # covers rank n, n-1 and below through the low-rank strategy
    n = a.nrows
    adj = adjugate(a)
    for i in range(n):
        for j in range(n):
            assert adj[j, i] == (-1) ** (i + j) * minor_det(a, {i}, {j})
    assert a @ adj == Matrix.identity(n).scale(det(a))


@settings(max_examples=80, deadline=None)
@given(low_rank())
def test_rank_and_nullspace(a):
    basis = nullspace(a)
    assert len(basis) == a.ncols - rank(a)
    for v in basis:
        assert all(x == 0 for x in a.apply(v))


def test_schur_examples(k3):
    assert schur_complement(laplacian(k3), {0, 1}) == Matrix([[0]])
    assert schur_complement(Matrix.identity(4), {0, 1}) == Matrix.identity(2)
    assert schur_complement(laplacian(k3), {2}) == Matrix([[F(3, 2), F(-3, 2)], [F(-3, 2), F(3, 2)]])


def test_schur_singular_block():
    with pytest.raises(SingularBlockError):
        schur_complement(Matrix([[0, 1], [1, 0]]), {0})


@settings(max_examples=100, deadline=None)
@given(square(5), st.data())
def test_schur_determinant_factorisation(m, data):
    n = m.nrows
    if n < 2:
        return
    block = set(data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n - 1, unique=True)))
    a = m.submatrix(sorted(block), sorted(block))
    if det(a) == 0:
        with pytest.raises(SingularBlockError):
            schur_complement(m, block)
        return
    assert det(m) == det(a) * det(schur_complement(m, block))


def test_char_poly_examples(k3):
    assert char_poly(Matrix.identity(2)) == Polynomial([1, -2, 1])
    assert char_poly(Matrix.zeros(2)) == Polynomial.monomial(2)
    q = char_poly(transition_matrix(k3))
    assert q == Polynomial([F(-1, 4), F(-3, 4), 0, 1])
    assert q == Polynomial([-1, 1]) * Polynomial([F(1, 2), 1]) * Polynomial([F(1, 2), 1])
    assert str(q) == "x^3 - 3/4*x - 1/4"
    with pytest.raises(NotSquareError):
        char_poly(Matrix([[1, 2]]))


def _poly_at_matrix(p: Polynomial, a: Matrix) -> Matrix:
    n = a.nrows
    acc = Matrix.zeros(n)
    for c in reversed(p.coeffs):
        acc = acc @ a + Matrix.identity(n).scale(c)
    return acc


@settings(max_examples=100, deadline=None)
@given(square())
def test_char_poly_properties(a):
    n = a.nrows
    q = char_poly(a)
    assert q.degree == n
    assert q.coeffs[-1] == 1
    assert q(0) == (-1) ** n * det(a)
    if n:
        assert q.coeffs[n - 1] == -a.trace()
    assert _poly_at_matrix(q, a) == Matrix.zeros(n)
    # det(tI - A) at a sample point
    t = F(7, 3)
    assert q(t) == det(Matrix.identity(n).scale(t) - a)


def test_polynomial_arithmetic():
    p = Polynomial([1, 2, 3])
    assert p.derivative() == Polynomial([2, 6])
    assert p - p == Polynomial()
    assert Polynomial().degree == -1
    assert (p * Polynomial.monomial(2))(2) == 4 * p(2)
    assert str(Polynomial([0, -1])) == "-x"


def test_format_rational():
    assert format_rational(F(4, 3)) == "4/3"
    assert format_rational(F(-6, 2)) == "-3"


def test_matrix_shape_checks():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])
