"""Exact dense linear algebra over the rationals.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Matrices are small, dense and immutable; nothing here touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    IndexOutOfRangeError,
    NotSquareError,
    SingularBlockError,
    SingularError,
)

__all__ = [
    "as_rational",
    "format_rational",
    "Matrix",
    "Polynomial",
    "det",
    "minor_det",
    "inverse",
    "solve",
    "rank",
    "nullspace",
    "adjugate",
    "schur_complement",
    "char_poly",
]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused so that inexact values never leak into a computation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    """``p/q`` in lowest terms, or ``p`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Matrix:
    """Immutable row-major matrix of Fractions."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols does not match row length")
        else:
            width = 0 if ncols is None else ncols
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def _trusted(cls, rows: tuple[tuple[Fraction, ...], ...], ncols: int) -> "Matrix":
        m = cls.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._trusted(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        zero = Fraction(0)
        return cls._trusted(tuple((zero,) * ncols for _ in range(nrows)), ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"Matrix({[[format_rational(x) for x in r] for r in self._rows]})"

    def __str__(self) -> str:
        cells = [[format_rational(x) for x in r] for r in self._rows]
        if not cells or not cells[0]:
            return f"[{self.nrows}x{self.ncols} matrix]"
        width = max(len(c) for r in cells for c in r)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    def transpose(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix.zeros(self.ncols, 0)
        return Matrix._trusted(tuple(zip(*self._rows)), self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._trusted(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._trusted(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def scale(self, c) -> "Matrix":
        c = as_rational(c)
        return Matrix._trusted(tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows()
        zero = Fraction(0)
        out = []
        for r in self._rows:
            out.append(tuple(sum((a * b for a, b in zip(r, c) if a and b), zero) for c in cols))
        return Matrix._trusted(tuple(out), other.ncols)

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product ``A v``."""
        if len(vector) != self.ncols:
            raise ValueError("vector length mismatch")
        v = [as_rational(x) for x in vector]
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._rows)

    def left_apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        """Row-vector product ``v^T A``."""
        if len(vector) != self.nrows:
            raise ValueError("vector length mismatch")
        v = [as_rational(x) for x in vector]
        return tuple(
            sum((v[i] * self._rows[i][j] for i in range(self.nrows)), Fraction(0))
            for j in range(self.ncols)
        )

    def trace(self) -> Fraction:
        _require_square(self)
        return sum((self._rows[i][i] for i in range(self.nrows)), Fraction(0))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        """Rows and columns in the given order (``E[i_1..i_s | j_1..j_t]``)."""
        for i in rows:
            if not 0 <= i < self.nrows:
                raise IndexOutOfRangeError(f"row index {i} out of range for {self.shape}")
        for j in cols:
            if not 0 <= j < self.ncols:
                raise IndexOutOfRangeError(f"column index {j} out of range for {self.shape}")
        return Matrix._trusted(
            tuple(tuple(self._rows[i][j] for j in cols) for i in rows), len(cols)
        )

    def delete(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "Matrix":
        rows, cols = set(rows), set(cols)
        for i in rows:
            if not 0 <= i < self.nrows:
                raise IndexOutOfRangeError(f"row index {i} out of range for {self.shape}")
        for j in cols:
            if not 0 <= j < self.ncols:
                raise IndexOutOfRangeError(f"column index {j} out of range for {self.shape}")
        keep_r = [i for i in range(self.nrows) if i not in rows]
        keep_c = [j for j in range(self.ncols) if j not in cols]
        return self.submatrix(keep_r, keep_c)

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


def _require_square(a: Matrix) -> None:
    if not a.is_square:
        raise NotSquareError(f"expected a square matrix, got {a.nrows}x{a.ncols}")


# ---------------------------------------------------------------------------
# determinants


def _bareiss(a: list[list[int]]) -> int:
    """Fraction-free elimination on an integer matrix (modified in place)."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def _det_gauss(rows: list[list[Fraction]]) -> Fraction:
    """Plain Gaussian elimination over Q (modified in place)."""
    n = len(rows)
    result = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
            result = -result
        pk = rows[k][k]
        result *= pk
        for i in range(k + 1, n):
            f = rows[i][k]
            if f:
                f /= pk
                ri, rk = rows[i], rows[k]
                for j in range(k + 1, n):
                    ri[j] -= f * rk[j]
    return result


def det(a: Matrix, method: str = "auto") -> Fraction:
    """Exact determinant; the 0x0 determinant is 1.

    ``method="bareiss"`` clears each row's denominators and runs Bareiss on
    integers (the default); ``method="gauss"`` eliminates directly over Q.
    """
    _require_square(a)
    if method == "gauss":
        return _det_gauss(a.to_lists())
    if method not in ("auto", "bareiss"):
        raise ValueError(f"unknown determinant method {method!r}")
    scale = 1
    ints = []
    for row in a.rows():
        m = lcm(*(x.denominator for x in row)) if row else 1
        scale *= m
        ints.append([x.numerator * (m // x.denominator) for x in row])
    return Fraction(_bareiss(ints), scale)


def minor_det(a: Matrix, delete_rows: Iterable[int] = (), delete_cols: Iterable[int] = ()) -> Fraction:
    """Determinant after deleting the given rows and columns."""
    _require_square(a)
    delete_rows, delete_cols = set(delete_rows), set(delete_cols)
    if len(delete_rows) != len(delete_cols):
        raise IndexOutOfRangeError("must delete as many rows as columns")
    return det(a.delete(delete_rows, delete_cols))


# ---------------------------------------------------------------------------
# elimination-based helpers


def _rref(rows: list[list[Fraction]]) -> list[int]:
    """Reduced row echelon form in place; returns the pivot columns."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(a: Matrix) -> int:
    if a.nrows == 0 or a.ncols == 0:
        return 0
    return len(_rref(a.to_lists()))


def nullspace(a: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : A x = 0}`` (one vector per free column)."""
    if a.nrows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(a.ncols)) for j in range(a.ncols)]
    rows = a.to_lists()
    pivots = _rref(rows)
    free = [c for c in range(a.ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * a.ncols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -rows[r][f]
        basis.append(tuple(x))
    return basis


def inverse(a: Matrix) -> Matrix:
    _require_square(a)
    n = a.nrows
    rows = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a.rows())]
    pivots = _rref(rows)
    if pivots[:n] != list(range(n)):
        raise SingularError("matrix is singular")
    return Matrix._trusted(tuple(tuple(r[n:]) for r in rows), n)


def solve(a: Matrix, b: Sequence) -> tuple[Fraction, ...]:
    """Unique solution of ``A x = b``."""
    _require_square(a)
    n = a.nrows
    if len(b) != n:
        raise ValueError("right-hand side length mismatch")
    rows = [list(r) + [as_rational(bi)] for r, bi in zip(a.rows(), b)]
    pivots = _rref(rows)
    if pivots != list(range(n)):
        raise SingularError("matrix is singular")
    return tuple(r[n] for r in rows)


def adjugate(a: Matrix) -> Matrix:
    """Classical adjoint, exact, including the singular cases.

    Rank n: ``det(A) A^-1``.  Rank n-1: ``adj(A) = c x y^T`` with ``x`` spanning
    the right kernel and ``y`` the left kernel; ``c`` is fixed by one cofactor.
    Lower rank: zero.
    """
    _require_square(a)
    n = a.nrows
    if n == 0:
        return Matrix.zeros(0)
    if n == 1:
        return Matrix([[1]])
    right = nullspace(a)
    if not right:
        return inverse(a).scale(det(a))
    if len(right) > 1:
        return Matrix.zeros(n)
    x = right[0]
    (y,) = nullspace(a.transpose())
    i = next(k for k, v in enumerate(x) if v)
    j = next(k for k, v in enumerate(y) if v)
    # adj[i][j] is the (j, i) cofactor
    cof = (-1) ** (i + j) * minor_det(a, {j}, {i})
    c = cof / (x[i] * y[j])
    return Matrix._trusted(tuple(tuple(c * xi * yj for yj in y) for xi in x), n)


def schur_complement(m: Matrix, block: Iterable[int]) -> Matrix:
    """``D - C A^-1 B`` where ``A`` is the principal submatrix on ``block``.

    The remaining indices keep ascending order in the result.
    """
    _require_square(m)
    block = list(dict.fromkeys(block))
    for i in block:
        if not 0 <= i < m.nrows:
            raise IndexOutOfRangeError(f"index {i} out of range for {m.shape}")
    bset = set(block)
    rest = [i for i in range(m.nrows) if i not in bset]
    a = m.submatrix(block, block)
    try:
        a_inv = inverse(a)
    except SingularError:
        raise SingularBlockError(f"principal block {sorted(block)} is singular") from None
    b = m.submatrix(block, rest)
    c = m.submatrix(rest, block)
    d = m.submatrix(rest, rest)
    if not block:
        return d
    return d - c @ (a_inv @ b)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Univariate polynomial with Fraction coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return Polynomial(as_rational(other) * c for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                xk = "x" if k == 1 else f"x^{k}"
                body = xk if mag == 1 else f"{format_rational(mag)}*{xk}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def char_poly(a: Matrix) -> Polynomial:
    """Monic ``det(xI - A)`` by the Faddeev-LeVerrier recurrence."""
    _require_square(a)
    n = a.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    if n == 0:
        return Polynomial(coeffs)
    ident = Matrix.identity(n)
    m = Matrix.zeros(n)
    for k in range(1, n + 1):
        m = a @ m + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(a @ m).trace() / k
    return Polynomial(coeffs)
