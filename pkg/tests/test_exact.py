"""Exact scalar and linear algebra tests."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cohint.exact import (INF, FieldError, Matrix, PrimeField, QQ, Quotient,
                          format_ext, format_rational, is_inf, kernel_basis,
                          normalize, parse_ext, rank, rref, solve)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_normalize_examples():
    assert normalize(6, 4) == Fraction(3, 2)
    assert normalize(0, -7) == Fraction(0, 1)
    assert normalize(0, -7).denominator == 1
    assert normalize(-7, -2) == Fraction(7, 2)
    with pytest.raises(ZeroDivisionError, match="zero denominator"):
        normalize(1, 0)


def test_rational_serialization():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(5)) == "5"
    assert format_ext(INF) == "inf"
    assert parse_ext("inf") is INF
    assert parse_ext("-7/2") == Fraction(-7, 2)


def test_infinity_ordering():
    assert INF > Fraction(10**9)
    assert Fraction(1) < INF
    assert INF == INF and not INF > INF
    assert INF + Fraction(5) is INF
    assert max(Fraction(3), INF) is INF


@given(fractions, fractions, fractions)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a


def test_rref_examples():
    ident = Matrix.identity(QQ, 3)
    r = rref(ident)
    assert r.rank == 3 and r.pivots == (0, 1, 2)
    z = Matrix.zeros(QQ, 2, 5)
    r = rref(z)
    assert r.rank == 0 and r.pivots == ()
    m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    assert rref(m).rank == 1


def test_kernel_examples():
    assert len(kernel_basis(Matrix.zeros(QQ, 2, 3))) == 3
    assert kernel_basis(Matrix.identity(QQ, 3)) == []
    # oracle: enumerate the four vectors of F_2^2
    g2 = PrimeField(2)
    m = Matrix.from_rows(g2, [[1, 1]])
    brute = [v for v in itertools.product(range(2), repeat=2)
             if m.apply(v) == (0,)]
    assert brute == [(0, 0), (1, 1)]
    assert kernel_basis(m) == [(1, 1)]


def test_solve_examples():
    ident = Matrix.identity(QQ, 2)
    b = (Fraction(2), Fraction(-3))
    assert solve(ident, b) == b
    assert solve(Matrix.zeros(QQ, 2, 2), (Fraction(1), Fraction(0))) is None
    m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    x = solve(m, (1, 2))
    assert x is not None and m.apply(x) == (Fraction(1), Fraction(2))
    with pytest.raises(ValueError):
        solve(m, (1, 2, 3))


def test_mixed_fields_rejected():
    a = Matrix.identity(QQ, 2)
    b = Matrix.identity(PrimeField(3), 2)
    with pytest.raises(FieldError, match="mixed field"):
        a @ b


def test_prime_field_arithmetic():
    g5 = PrimeField(5)
    assert g5.coerce(Fraction(1, 2)) == 3
    assert g5.mul(3, 2) == 1
    assert g5.inv(4) == 4
    with pytest.raises(FieldError):
        PrimeField(6)
    with pytest.raises(FieldError):
        g5.coerce(Fraction(1, 5))


@given(st.integers(0, 4), st.integers(0, 4), st.randoms(use_true_random=False))
def test_rank_transpose_and_nullity(rows, cols, rng):
    m = Matrix.from_rows(QQ, [[rng.randint(-3, 3) for _ in range(cols)]
                              for _ in range(rows)]) if rows else Matrix.zeros(QQ, 0, cols)
    assert rank(m) == rank(m.transpose())
    assert rank(m) + len(kernel_basis(m)) == cols


def test_solve_is_exact_on_large_entries():
    m = Matrix.from_rows(QQ, [[Fraction(10**12, 7), 1], [0, Fraction(3, 10**9)]])
    b = m.apply((Fraction(5, 13), Fraction(-2, 11)))
    x = solve(m, b)
    assert x == (Fraction(5, 13), Fraction(-2, 11))


def test_quotient_coords():
    # plane spanned by e1, e2 modulo the line e1 + e2
    space = [(1, 0, 0), (0, 1, 0)]
    sub = [(1, 1, 0)]
    q = Quotient(QQ, 3, [tuple(map(Fraction, v)) for v in space],
                 [tuple(map(Fraction, v)) for v in sub])
    assert q.dim == 1
    assert q.coords(tuple(map(Fraction, (1, 1, 0)))) == (Fraction(0),)
    assert q.coords(tuple(map(Fraction, (1, 0, 0)))) != (Fraction(0),)
