from fractions import Fraction

import pytest

from algebra.cyclotomic import ONE, ZERO, Cyclotomic, cyclo_arith, root_of_unity
from errors import DomainError


def test_zeta4_squares_to_minus_one():
    i = root_of_unity(4, 1)
    assert i * i == -ONE
    assert i**4 == ONE


def test_values_compare_across_conductors():
    assert root_of_unity(8, 2) == root_of_unity(4, 1)
    assert root_of_unity(2, 1) == Cyclotomic.rational(-1)
    assert hash(root_of_unity(8, 2)) == hash(root_of_unity(4, 1))


def test_inverse_of_a_sum():
    z = root_of_unity(3, 1)
    x = z + 2
    assert x * x.inverse() == ONE
    assert (ONE / x) * x == ONE


def test_inverse_of_zero_is_a_domain_error():
    with pytest.raises(DomainError):
        ZERO.inverse()


def test_rational_part():
    assert Cyclotomic.rational(Fraction(3, 4)).as_rational() == Fraction(3, 4)
    assert root_of_unity(4, 1).as_rational() is None


def test_sqrt_unit():
    assert (-ONE).sqrt_unit() * (-ONE).sqrt_unit() == -ONE
    i = root_of_unity(4, 1)
    root = i.sqrt_unit()
    assert root * root == i
    assert root.conductor == 8


def test_sqrt_of_non_unit_is_rejected():
    with pytest.raises(DomainError):
        (root_of_unity(3, 1) + 1 + 1).sqrt_unit()


def test_root_of_unity_log():
    assert root_of_unity(4, 3).root_of_unity_log() == (4, 3)
    assert Cyclotomic.rational(2).root_of_unity_log() is None


def test_cyclo_arith_dispatch():
    a = root_of_unity(3, 1)
    b = root_of_unity(3, 2)
    assert cyclo_arith(a, b, "add") == -ONE
    assert cyclo_arith(a, b, "mul") == ONE
    assert cyclo_arith(a, None, "inv") == b
    assert cyclo_arith(a, None, "neg") + a == ZERO
    assert cyclo_arith(a, a, "eq") is True
    with pytest.raises(DomainError):
        cyclo_arith(ZERO, None, "inv")
    with pytest.raises(DomainError):
        cyclo_arith(a, b, "pow")
