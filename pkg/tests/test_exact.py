"""Exact integer and finite-field linear algebra against independent oracles.

The determinant, inverse, characteristic polynomial, and rank routines are
cross-checked with hypothesis against brute-force Fraction eliminations and
cofactor expansions written inline here, so the two routes share no code.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from connlab.exact import (
    FieldMatrix,
    IntMatrix,
    IntPolynomial,
    SingularMatrixError,
    charpoly,
    det,
    field_inverse,
    field_matpow,
    field_reduce,
    inverse_exact,
    inverse_unimodular,
    is_prime,
    is_reciprocal,
    matpow,
    rank,
    reciprocal_sign,
)

entries = st.integers(min_value=-6, max_value=6)


def square(n_max=5):
    return st.integers(min_value=1, max_value=n_max).flatmap(
        lambda n: st.lists(
            st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n
        )
    )


def cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * rows[0][j] * cofactor_det(minor)
    return total


def fraction_solve(rows, rhs):
    """Plain Gauss-Jordan over Fraction; returns None if singular."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(y) for y in r] for row, r in zip(rows, rhs)]
    col = 0
    for i in range(n):
        piv = next((r for r in range(i, n) if aug[r][i] != 0), None)
        if piv is None:
            return None
        aug[i], aug[piv] = aug[piv], aug[i]
        inv = 1 / aug[i][i]
        aug[i] = [x * inv for x in aug[i]]
        for r in range(n):
            if r != i and aug[r][i] != 0:
                f = aug[r][i]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[i])]
        col += 1
    return [row[n:] for row in aug]


@settings(max_examples=120, deadline=None)
@given(square(4))
def test_det_matches_cofactor_expansion(rows):
    assert det(IntMatrix(rows)) == cofactor_det(rows)


@settings(max_examples=80, deadline=None)
@given(square(4))
def test_inverse_exact_matches_gauss_jordan(rows):
    m = IntMatrix(rows)
    if det(m) == 0:
        with pytest.raises(SingularMatrixError):
            inverse_exact(m)
        return
    n = len(rows)
    eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    oracle = fraction_solve(rows, eye)
    inv = inverse_exact(m)
    for i in range(n):
        for j in range(n):
            assert inv.rows[i][j] == oracle[i][j]


@settings(max_examples=80, deadline=None)
@given(square(4), st.integers(min_value=-5, max_value=5))
def test_charpoly_evaluates_like_determinant(rows, x):
    m = IntMatrix(rows)
    p = charpoly(m)
    n = len(rows)
    shifted = [[x * (1 if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]
    assert p(x) == cofactor_det(shifted)


@settings(max_examples=40, deadline=None)
@given(square(3), st.integers(min_value=0, max_value=5))
def test_matpow_matches_repeated_multiplication(rows, k):
    m = IntMatrix(rows)
    expected = IntMatrix.identity(len(rows))
    for _ in range(k):
        expected = expected @ m
    assert matpow(m, k).rows == expected.rows


@settings(max_examples=60, deadline=None)
@given(square(4), st.sampled_from([2, 3, 5, 7]))
def test_field_ops_commute_with_reduction(rows, p):
    m = IntMatrix(rows)
    mp = field_reduce(m, p)
    sq_then_reduce = field_reduce(m @ m, p)
    assert mp @ mp == sq_then_reduce
    assert field_matpow(mp, 3) == field_reduce(m @ m @ m, p)
    if det(m) % p != 0:
        inv = field_inverse(mp)
        assert inv @ mp == FieldMatrix.identity(len(rows), p)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=4), st.data())
def test_rank_of_factored_product(n, r, data):
    # A = B C with B n-by-r, C r-by-n has rank at most r; compare with a
    # Fraction row reduction oracle
    B = data.draw(st.lists(st.lists(entries, min_size=r, max_size=r), min_size=n, max_size=n))
    C = data.draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=r, max_size=r))
    A = [[sum(B[i][k] * C[k][j] for k in range(r)) for j in range(n)] for i in range(n)]
    got = rank(IntMatrix(A))
    assert got <= r
    # oracle: count pivots
    work = [[Fraction(x) for x in row] for row in A]
    pivots = 0
    for j in range(n):
        piv = next((i for i in range(pivots, n) if work[i][j] != 0), None)
        if piv is None:
            continue
        work[pivots], work[piv] = work[piv], work[pivots]
        for i in range(n):
            if i != pivots and work[i][j] != 0:
                f = work[i][j] / work[pivots][j]
                work[i] = [a - f * b for a, b in zip(work[i], work[pivots])]
        pivots += 1
    assert got == pivots


def test_inverse_unimodular_round_trip():
    m = IntMatrix([[2, 1], [1, 1]])
    inv = inverse_unimodular(m)
    assert (m @ inv).rows == IntMatrix.identity(2).rows
    # invertible over the rationals but not over the integers
    with pytest.raises(ValueError):
        inverse_unimodular(IntMatrix([[2, 0], [0, 2]]))
    with pytest.raises(SingularMatrixError):
        inverse_unimodular(IntMatrix([[1, 1], [1, 1]]))


def test_reciprocal_sign_cases():
    assert reciprocal_sign(IntPolynomial((1, -3, 1))) == 1          # palindromic
    assert reciprocal_sign(IntPolynomial((-1, 7, -7, 1))) == -1     # anti-palindromic
    assert reciprocal_sign(IntPolynomial((1, 2, 3, 5))) is None     # neither
    assert is_reciprocal(IntPolynomial((1, -3, 1)))


def test_is_prime_small_values():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23}
    for n in range(2, 25):
        assert is_prime(n) == (n in primes)
    assert not is_prime(1)
