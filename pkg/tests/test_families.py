"""Matrix families: shell-scalar dilations, constant matrices, sampled bounds."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radialpadic.families import (
    ConstantMatrix,
    Pointwise,
    ScalarRadial,
    nu_of_family,
    nu_of_scenario,
)
from radialpadic.padic import PAdicMatrix, PAdicVector, log_norm


# -- scalar-radial families ----------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(
    p=st.sampled_from([2, 3, 5]),
    slope=st.integers(-3, 3),
    offset=st.integers(-4, 4),
    gamma=st.integers(-6, 6),
)
def test_scalar_radial_norm_on_shell(p, slope, offset, gamma):
    fam = ScalarRadial(slope, offset)
    k = fam.k_on_shell(gamma)
    assert k == slope * gamma + offset
    s = fam.scalar_on_shell(p, gamma)
    # |s|_p = p^k by construction
    assert log_norm(s, p) == k


def test_scalar_radial_matrix_is_scalar_multiple_of_identity():
    fam = ScalarRadial(1, -2)
    y = PAdicVector(3, (Fraction(9), Fraction(27)))  # shell 2 in Q_3^2 (max norm 9)
    a = fam.matrix_at(3, 2, y)
    s = fam.scalar_on_shell(3, -2)
    assert a.rows == PAdicMatrix.scalar(3, 2, s).rows
    assert a.log_norm() == fam.k_on_shell(-2)


def test_scalar_radial_rejects_origin():
    fam = ScalarRadial(1, 0)
    with pytest.raises(ValueError):
        fam.matrix_at(2, 1, PAdicVector(2, (Fraction(0),)))


# -- constant matrices ---------------------------------------------------------


def test_constant_matrix_rejects_singular():
    bad = PAdicMatrix(2, ((Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))))
    with pytest.raises(ValueError):
        ConstantMatrix(bad)


def test_constant_matrix_norm_exponents():
    # diag(3, 1/3) over Q_3: ||A|| = |1/3|_3 = 3, ||A^-1|| = 3 as well
    a = PAdicMatrix(3, ((Fraction(3), Fraction(0)), (Fraction(0), Fraction(1, 3))))
    fam = ConstantMatrix(a)
    assert fam.k_norm == 1
    assert fam.k_inverse == 1
    assert fam.det_inv_norm == Fraction(1)  # det = 1
    y = PAdicVector(3, (Fraction(1), Fraction(1)))
    assert fam.matrix_at(3, 2, y).rows == a.rows


def test_constant_matrix_nu_is_exact():
    a = PAdicMatrix(2, ((Fraction(1), Fraction(1, 4)), (Fraction(0), Fraction(1))))
    fam = ConstantMatrix(a)
    # ||A|| = 4 (entry 1/4), A^-1 = [[1, -1/4], [0, 1]] so ||A^-1|| = 4
    assert nu_of_family(fam, 2, 2) == fam.k_norm + fam.k_inverse == 4


# -- sampled families ----------------------------------------------------------


def test_scalar_radial_nu_is_zero():
    assert nu_of_family(ScalarRadial(2, -3), 5, 1) == 0
    assert nu_of_family(ScalarRadial(0, 7), 2, 2) == 0


def test_pointwise_constant_disguise_recovers_nu():
    a = PAdicMatrix(3, ((Fraction(9), Fraction(0)), (Fraction(0), Fraction(1))))
    fam = Pointwise(lambda y: a)
    # constant evaluator: sampling must find exactly k_A + k_{A^-1} = 0 + 2
    assert nu_of_family(fam, 3, 2) == ConstantMatrix(a).k_norm + ConstantMatrix(a).k_inverse


def test_pointwise_shell_scalar_is_balanced():
    def ev(y):
        s = Fraction(2) ** (-int(y.shell()))
        return PAdicMatrix.scalar(2, 1, s)

    # scalar matrices always have k_A + k_{A^-1} = 0, whatever the shell
    assert nu_of_family(Pointwise(ev), 2, 1) == 0


def test_nu_of_scenario_takes_max():
    a = PAdicMatrix(2, ((Fraction(4),),))
    fams = [ScalarRadial(1, 0), ConstantMatrix(a)]
    # k_A = -2? ||A|| = |4|_2 = 1/4 -> log = -2; inverse norm = 4 -> log = 2; nu = 0
    assert nu_of_scenario(fams, 2, 1) == 0
    b = PAdicMatrix(2, ((Fraction(1), Fraction(1, 2)), (Fraction(0), Fraction(1))))
    fams2 = [ScalarRadial(0, 0), ConstantMatrix(b)]
    assert nu_of_scenario(fams2, 2, 2) == 2
