"""Exact p-adic arithmetic: valuations, norms, matrices."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radialpadic.padic import (
    PAdicMatrix,
    PAdicVector,
    check_prime,
    det_norm_bounds_hold,
    is_prime,
    log_norm,
    pnorm,
    valuation,
)

PRIMES = [2, 3, 5, 7, 11]


def test_prime_validation():
    assert is_prime(2) and is_prime(97)
    assert not is_prime(1) and not is_prime(91)
    with pytest.raises(ValueError):
        check_prime(6)
    with pytest.raises(ValueError):
        check_prime(True)


@settings(max_examples=120, deadline=None)
@given(
    p=st.sampled_from(PRIMES),
    v=st.integers(-8, 8),
    unit_num=st.integers(1, 500),
    unit_den=st.integers(1, 500),
)
def test_valuation_constructive(p, v, unit_num, unit_den):
    # build x = p^v * (a/b) with p dividing neither a nor b
    while unit_num % p == 0:
        unit_num += 1
    while unit_den % p == 0:
        unit_den += 1
    x = Fraction(p) ** v * Fraction(unit_num, unit_den)
    assert valuation(x, p) == v
    assert pnorm(x, p) == Fraction(p) ** (-v)
    assert log_norm(x, p) == -v


def test_zero_conventions():
    assert valuation(0, 5) == math.inf
    assert pnorm(0, 5) == 0
    assert log_norm(0, 5) == -math.inf


@settings(max_examples=120, deadline=None)
@given(
    p=st.sampled_from(PRIMES),
    a=st.fractions(max_denominator=1000),
    b=st.fractions(max_denominator=1000),
)
def test_ultrametric_and_multiplicativity(p, a, b):
    na, nb = pnorm(a, p), pnorm(b, p)
    assert pnorm(a * b, p) == na * nb
    assert pnorm(a + b, p) <= max(na, nb)
    if na != nb:
        assert pnorm(a + b, p) == max(na, nb)


def test_vector_norm_is_max():
    x = PAdicVector(3, (Fraction(9), Fraction(1, 3), Fraction(2)))
    assert x.norm() == Fraction(3)
    assert x.shell() == 1
    assert x.scale(Fraction(1, 9)).shell() == 3


def test_matrix_norm_det_inverse_exact():
    a = PAdicMatrix(2, ((Fraction(2), Fraction(1)), (Fraction(1), Fraction(1))))
    assert a.det() == 1
    assert a.norm() == 1
    inv = a.inverse()
    prod = [
        [sum(inv.rows[i][k] * a.rows[k][j] for k in range(2)) for j in range(2)]
        for i in range(2)
    ]
    assert prod == [[1, 0], [0, 1]]


def test_singular_matrix_raises():
    a = PAdicMatrix(5, ((Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))))
    assert a.det() == 0
    with pytest.raises(ZeroDivisionError):
        a.inverse()


@st.composite
def invertible_matrices(draw):
    # L (unit lower) times U (nonzero diagonal) is always invertible
    p = draw(st.sampled_from(PRIMES))
    n = draw(st.integers(1, 3))
    low = [[Fraction(draw(st.integers(-5, 5))) if i > j else Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    diag = [Fraction(draw(st.sampled_from([-4, -2, -1, 1, 2, 3, 8]))) for _ in range(n)]
    up = [[Fraction(draw(st.integers(-5, 5))) if i < j else (diag[i] if i == j else Fraction(0)) for j in range(n)] for i in range(n)]
    prod = tuple(
        tuple(sum(low[i][k] * up[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )
    return PAdicMatrix(p, prod)


@settings(max_examples=80, deadline=None)
@given(m=invertible_matrices())
def test_det_norm_sandwich(m):
    # ||A||^-n <= |det A^-1|_p <= ||A^-1||^n
    assert det_norm_bounds_hold(m)


@settings(max_examples=80, deadline=None)
@given(m=invertible_matrices(), coords=st.lists(st.integers(-50, 50), min_size=1, max_size=3))
def test_operator_norm_bound(m, coords):
    coords = (coords * 3)[: m.n]
    x = PAdicVector(m.p, tuple(Fraction(c) for c in coords))
    ax = m.matvec(x)
    assert ax.norm() <= m.norm() * x.norm()


def test_scalar_matrix_norm_identity():
    # |s I| has norm |s| and k_A = -valuation(s)
    a = PAdicMatrix.scalar(3, 2, Fraction(1, 9))
    assert a.norm() == 9
    assert a.log_norm() == 2
    assert a.inverse().log_norm() == -2
