"""Exact dense linear algebra over the integers, rationals, and prime fields.

Everything here is arbitrary precision: determinants by fraction-free
(Bareiss) elimination, inverses by fraction-free Gauss-Jordan, characteristic
polynomials by the integer Faddeev-LeVerrier recursion, matrix powers by
binary exponentiation.  No floating point enters this module; conversion to
numpy happens only via IntMatrix.to_float().

The characteristic polynomial costs O(n^4) integer work, fine up to a few
hundred rows; that covers every desk-scale experiment in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class ShapeError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


class IntMatrix:
    """Dense integer matrix with exact arithmetic.

    Rows are plain lists of Python ints, so entries never overflow.  The
    shape is stored explicitly so 0-row matrices (edgeless incidence blocks)
    round-trip correctly.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int | None = None):
        self.rows = [list(map(int, r)) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ShapeError("ragged rows")
            if ncols is not None and ncols != self.ncols:
                raise ShapeError("declared column count does not match rows")
        else:
            if ncols is None:
                raise ShapeError("empty matrix needs an explicit column count")
            self.ncols = ncols

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        m = cls.zeros(n, n)
        for i, x in enumerate(entries):
            m.rows[i][i] = int(x)
        return m

    def copy(self) -> "IntMatrix":
        return IntMatrix([r[:] for r in self.rows], ncols=self.ncols)

    # -- basic algebra -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.rows], ncols=self.ncols)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in r] for r in self.rows], ncols=self.ncols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        if not cols:
            return IntMatrix.zeros(self.nrows, other.ncols)
        out = [
            [sum(a * b for a, b in zip(row, col)) for col in cols]
            for row in self.rows
        ]
        return IntMatrix(out, ncols=other.ncols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.ncols:
            raise ShapeError("vector length does not match column count")
        return tuple(sum(a * x for a, x in zip(row, vec)) for row in self.rows)

    def transpose(self) -> "IntMatrix":
        if not self.rows:
            return IntMatrix([[] for _ in range(self.ncols)], ncols=0)
        return IntMatrix([list(col) for col in zip(*self.rows)], ncols=self.nrows)

    def trace(self) -> int:
        if not self.is_square():
            raise ShapeError("trace needs a square matrix")
        return sum(self.rows[i][i] for i in range(self.nrows))

    def entry_sum(self) -> int:
        return sum(sum(r) for r in self.rows)

    def max_abs(self) -> int:
        return max((abs(a) for r in self.rows for a in r), default=0)

    def abs(self) -> "IntMatrix":
        return IntMatrix([[abs(a) for a in r] for r in self.rows], ncols=self.ncols)

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product, row-major cell order (i*p+k, j*q+l)."""
        p, q = other.shape
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append([a * b for a in ra for b in rb])
        return IntMatrix(out, ncols=self.ncols * q)

    def to_float(self) -> np.ndarray:
        return np.array(self.rows, dtype=float).reshape(self.nrows, self.ncols)

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols})"


class RatMatrix:
    """Dense matrix over the rationals (Fraction entries)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[Fraction]], ncols: int | None = None):
        self.rows = [[Fraction(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ShapeError("ragged rows")
        else:
            if ncols is None:
                raise ShapeError("empty matrix needs an explicit column count")
            self.ncols = ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        return RatMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows],
            ncols=other.ncols,
        )

    def apply(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(vec) != self.ncols:
            raise ShapeError("vector length does not match column count")
        return tuple(sum(a * x for a, x in zip(row, vec)) for row in self.rows)

    def entry_sum(self) -> Fraction:
        return sum((x for r in self.rows for x in r), Fraction(0))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def to_int_matrix(self) -> IntMatrix:
        bad = [
            (i, j, x)
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
            if x.denominator != 1
        ]
        if bad:
            i, j, x = bad[0]
            raise ValueError(f"non-integer entry {x} at ({i},{j})")
        return IntMatrix([[int(x) for x in r] for r in self.rows], ncols=self.ncols)

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float).reshape(
            self.nrows, self.ncols
        )

    @classmethod
    def from_int(cls, m: IntMatrix) -> "RatMatrix":
        return cls([[Fraction(a) for a in r] for r in m.rows], ncols=m.ncols)

    def __repr__(self) -> str:
        return f"RatMatrix({self.nrows}x{self.ncols})"


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients stored ascending by degree."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversed(self) -> "IntPolynomial":
        return IntPolynomial(tuple(reversed(self.coeffs)))


def is_reciprocal(p: IntPolynomial) -> bool:
    """True iff the coefficient list is palindromic, i.e. x^n p(1/x) = p(x)."""
    return p.coeffs == tuple(reversed(p.coeffs))


def reciprocal_sign(p: IntPolynomial) -> int | None:
    """Sign s with x^n p(1/x) = s*p(x), or None if neither sign works.

    Characteristic polynomials of squared connection Laplacians satisfy this
    with s = (-1)^n: the spectrum of L^2 is closed under inversion and has
    determinant 1, so the coefficient list is a palindrome up to that global
    sign.  Plain palindromicity (s = +1) fails whenever n is odd.
    """
    rev = tuple(reversed(p.coeffs))
    if p.coeffs == rev:
        return 1
    if p.coeffs == tuple(-c for c in rev):
        return -1
    return None


# ---------------------------------------------------------------------------
# elimination


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination.

    Pivots are chosen as the first nonzero entry in each column; every
    division in the update is exact by the Sylvester minor identity.
    """
    if not m.is_square():
        raise ShapeError("determinant needs a square matrix")
    n = m.nrows
    if n == 0:
        return 1
    a = [r[:] for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            f = row_i[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - f * row_k[j]
                q, r = divmod(num, prev)
                if r:
                    raise ArithmeticError("inexact division in Bareiss step")
                row_i[j] = q
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def inverse_exact(m: IntMatrix) -> RatMatrix:
    """Exact inverse by fraction-free Gauss-Jordan elimination.

    The augmented system [m | I] is reduced with Bareiss-style integer
    updates; at the end the left block is diagonal and each augmented row
    divided by its diagonal entry gives the inverse row.
    """
    if not m.is_square():
        raise ShapeError("inverse needs a square matrix")
    n = m.nrows
    if n == 0:
        return RatMatrix([], ncols=0)
    width = 2 * n
    a = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m.rows)]
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    break
            else:
                raise SingularMatrixError("matrix is singular over the rationals")
        pivot = a[k][k]
        row_k = a[k]
        for i in range(n):
            if i == k:
                continue
            row_i = a[i]
            f = row_i[k]
            for j in range(width):
                if j == k:
                    continue
                num = pivot * row_i[j] - f * row_k[j]
                q, r = divmod(num, prev)
                if r:
                    raise ArithmeticError("inexact division in Jordan step")
                row_i[j] = q
            row_i[k] = 0
        prev = pivot
    out = []
    for i in range(n):
        d = a[i][i]
        if d == 0:
            raise SingularMatrixError("matrix is singular over the rationals")
        out.append([Fraction(a[i][j], d) for j in range(n, width)])
    return RatMatrix(out, ncols=n)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Integer inverse of a unimodular matrix; fails loudly otherwise."""
    inv = inverse_exact(m)
    try:
        return inv.to_int_matrix()
    except ValueError as exc:
        raise ValueError(f"matrix is not unimodular: {exc}") from exc


def rank(m: IntMatrix) -> int:
    """Exact rank over the rationals by Gaussian elimination on Fractions."""
    rows = [[Fraction(x) for x in r] for r in m.rows]
    r = 0
    for col in range(m.ncols):
        pivot = next((i for i in range(r, m.nrows) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        for i in range(r + 1, m.nrows):
            if rows[i][col] != 0:
                factor = rows[i][col] * inv
                for j in range(col, m.ncols):
                    rows[i][j] -= factor * rows[r][j]
        r += 1
        if r == m.nrows:
            break
    return r


def charpoly(m: IntMatrix) -> IntPolynomial:
    """Exact monic characteristic polynomial det(xI - m).

    Integer Faddeev-LeVerrier recursion: M_1 = m, c_k = -tr(m M_{k-1} +
    c_{k-1} m)/k; every division is provably exact and asserted.  The final
    Cayley-Hamilton step m(M_n + c_n I) = 0 is checked as well.
    """
    if not m.is_square():
        raise ShapeError("characteristic polynomial needs a square matrix")
    n = m.nrows
    if n == 0:
        return IntPolynomial((1,))
    coeffs_desc = [1]
    mk = m.copy()
    for k in range(1, n + 1):
        t = mk.trace()
        q, r = divmod(-t, k)
        if r:
            raise ArithmeticError("inexact trace division in Faddeev-LeVerrier")
        coeffs_desc.append(q)
        if k < n:
            for i in range(n):
                mk.rows[i][i] += q
            mk = m @ mk
        else:
            for i in range(n):
                mk.rows[i][i] += q
            if not (m @ mk).is_zero():
                raise ArithmeticError("Cayley-Hamilton check failed")
    return IntPolynomial(tuple(reversed(coeffs_desc)))


def matpow(m: IntMatrix, k: int) -> IntMatrix:
    """Exact k-th power, k >= 0, by binary exponentiation."""
    if not m.is_square():
        raise ShapeError("power needs a square matrix")
    if k < 0:
        raise ValueError("negative powers are handled via exact inverses")
    result = IntMatrix.identity(m.nrows)
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


# ---------------------------------------------------------------------------
# prime fields


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class FieldMatrix:
    """Dense matrix over F_p with entries reduced to 0..p-1."""

    __slots__ = ("p", "rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[int]], p: int, ncols: int | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.rows = [[int(x) % p for x in r] for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ShapeError("ragged rows")
        else:
            if ncols is None:
                raise ShapeError("empty matrix needs an explicit column count")
            self.ncols = ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @classmethod
    def identity(cls, n: int, p: int) -> "FieldMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldMatrix)
            and self.p == other.p
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.p != other.p:
            raise ValueError("mixed moduli")
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.p
        cols = list(zip(*other.rows))
        return FieldMatrix(
            [[sum(a * b for a, b in zip(row, col)) % p for col in cols] for row in self.rows],
            p,
            ncols=other.ncols,
        )

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        p = self.p
        return tuple(sum(a * x for a, x in zip(row, vec)) % p for row in self.rows)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.p != other.p or self.shape != other.shape:
            raise ShapeError("shape or modulus mismatch")
        return FieldMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            self.p,
            ncols=self.ncols,
        )

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def __repr__(self) -> str:
        return f"FieldMatrix({self.nrows}x{self.ncols} mod {self.p})"


def field_reduce(m: IntMatrix, p: int) -> FieldMatrix:
    return FieldMatrix(m.rows, p, ncols=m.ncols)


def field_inverse(m: FieldMatrix) -> FieldMatrix:
    """Inverse over F_p by Gauss-Jordan elimination with modular pivots."""
    if m.nrows != m.ncols:
        raise ShapeError("inverse needs a square matrix")
    n = m.nrows
    p = m.p
    a = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m.rows)]
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if a[r][k] % p != 0), None)
        if pivot_row is None:
            raise SingularMatrixError(f"matrix is singular mod {p}")
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
        inv_p = pow(a[k][k], p - 2, p)
        a[k] = [(x * inv_p) % p for x in a[k]]
        for i in range(n):
            if i == k or a[i][k] == 0:
                continue
            f = a[i][k]
            a[i] = [(x - f * y) % p for x, y in zip(a[i], a[k])]
    return FieldMatrix([row[n:] for row in a], p, ncols=n)


def field_matpow(m: FieldMatrix, k: int) -> FieldMatrix:
    if m.nrows != m.ncols:
        raise ShapeError("power needs a square matrix")
    if k < 0:
        return field_matpow(field_inverse(m), -k)
    result = FieldMatrix.identity(m.nrows, m.p)
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


# ---------------------------------------------------------------------------
# dump format: first line "rows cols", then one whitespace-separated row per
# line; rational entries are written as num/den (plain integer when den = 1).


def dump_matrix(m: IntMatrix | RatMatrix) -> str:
    lines = [f"{m.nrows} {m.ncols}"]
    for row in m.rows:
        toks = []
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                toks.append(f"{x.numerator}/{x.denominator}")
            else:
                toks.append(str(int(x)))
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> IntMatrix | RatMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix dump")
    nrows, ncols = map(int, lines[0].split())
    rows = []
    rational = False
    for ln in lines[1 : nrows + 1]:
        row = []
        for tok in ln.split():
            if "/" in tok:
                num, den = tok.split("/")
                row.append(Fraction(int(num), int(den)))
                rational = True
            else:
                row.append(Fraction(int(tok)))
        if len(row) != ncols:
            raise ValueError("row width does not match header")
        rows.append(row)
    if len(rows) != nrows:
        raise ValueError("row count does not match header")
    if rational:
        return RatMatrix(rows, ncols=ncols)
    return IntMatrix([[int(x) for x in r] for r in rows], ncols=ncols)
