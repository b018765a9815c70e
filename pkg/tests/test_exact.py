from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from syzdiv.exact import GENUS, GP_ONE, GP_ZERO, GPoly, binomial


def test_binomial_ordinary_values():
    assert binomial(4, 2) == 6
    assert binomial(0, 0) == 1
    assert binomial(5, 5) == 1
    assert binomial(5, 7) == 0
    assert binomial(40, 20) == 137846528820


def test_binomial_negative_k_is_zero():
    for n in (-3, -1, 0, 2, 17):
        assert binomial(n, -1) == 0
        assert binomial(n, -4) == 0


def test_binomial_negative_upper_index():
    assert binomial(-1, 3) == -1
    # C(-1, p) = (-1)^p, literally the falling factorial
    for p in range(9):
        assert binomial(-1, p) == (-1) ** p
    assert binomial(-5, 3) == F(-35)
    assert binomial(-2, 2) == 3


def test_binomial_pascal_recurrence_on_grid():
    for n in range(-10, 41):
        for k in range(41):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_binomial_symmetry_on_ordinary_range():
    for n in range(41):
        for k in range(n + 1):
            assert binomial(n, k) == binomial(n, n - k)


def test_binomial_integer_valued():
    for n in range(-10, 30):
        for k in range(15):
            assert binomial(n, k).denominator == 1


def test_gpoly_eval():
    p = GPoly((6, 2))  # 2g + 6
    assert p(5) == 16
    assert p(F(1, 2)) == 7
    assert GP_ZERO(3) == 0


def test_gpoly_mul():
    assert (GENUS + 1) * (GENUS - 1) == GPoly((-1, 0, 1))
    assert (GENUS * 12) * F(1, 12) == GENUS


def test_gpoly_trailing_zeros_trimmed():
    assert GPoly((1, 2, 0, 0)) == GPoly((1, 2))
    assert GPoly((0, 0)).is_zero()
    assert GPoly((0,)).degree == -1


def test_gpoly_constant_access():
    assert GPoly((7,)).constant() == 7
    assert GP_ZERO.constant() == 0
    with pytest.raises(ValueError):
        GENUS.constant()


def test_gpoly_scalar_equality_and_hash():
    assert GPoly((5,)) == 5
    assert GPoly((5,)) == F(5)
    assert hash(GPoly((5,))) == hash(F(5))
    assert GENUS != 5
    assert {GPoly((3,)): "x"}[F(3)] == "x"


def test_gpoly_str_canonical():
    assert str(GPoly((15, 3))) == "3*g+15"
    assert str(GPoly((5, -1))) == "-g+5"
    assert str(GPoly((-1, 0, 1))) == "g^2-1"
    assert str(GP_ZERO) == "0"
    assert str(GPoly((F(-4, 3),))) == "-4/3"
    assert str(GENUS) == "g"
    assert str(-GENUS) == "-g"
    assert str(GPoly((0, F(8, 3)))) == "8/3*g"


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.lists(small_fractions, max_size=3).map(GPoly)


@given(polys, polys)
def test_gpoly_mul_commutes(p, q):
    assert p * q == q * p


@given(polys, polys, polys)
def test_gpoly_distributes(p, q, r):
    assert p * (q + r) == p * q + p * r


@given(polys, polys, polys)
def test_gpoly_add_associates(p, q, r):
    assert (p + q) + r == p + (q + r)


@given(polys, polys, small_fractions)
def test_gpoly_eval_is_ring_map(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@given(polys)
def test_gpoly_neg_and_sub(p):
    assert p - p == GP_ZERO
    assert p + (-p) == GP_ZERO
    assert GP_ONE * p == p
