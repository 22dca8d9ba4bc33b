import pytest

from algebra.torsion import TorsionGroup, beta_eval, quad_sign
from errors import DomainError


def test_from_invariants_pairs_prime_powers():
    assert TorsionGroup.from_invariants([6, 6]).pairs == (2, 3)
    assert TorsionGroup.from_invariants([3, 3]).pairs == (3,)


def test_unpaired_factor_is_rejected():
    with pytest.raises(DomainError):
        TorsionGroup.from_invariants([2, 4])


def test_non_prime_power_is_rejected():
    with pytest.raises(DomainError):
        TorsionGroup((6,))


def test_shape():
    group = TorsionGroup.elementary(2)
    assert group.order == 16
    assert group.degree == 4
    assert group.exponent == 2
    assert group.is_elementary_two


def test_beta_is_alternating():
    group = TorsionGroup.elementary(1)
    a, b = group.basis()
    assert group.beta_sign(a, b) == -1
    assert group.beta_sign(a, a) == 1
    assert group.beta_sign(a, group.mul(a, b)) == -1


def test_quadratic_sign_parts():
    group = TorsionGroup.elementary(2)
    assert len(group.plus_part()) == 10
    assert len(group.minus_part()) == 6
    assert group.quad_sign(group.parse("11 00")) == -1


def test_format_and_parse():
    group = TorsionGroup.elementary(2)
    t = group.parse("10 01")
    assert t == (1, 0, 0, 1)
    assert group.format(t) == "10 01"
    assert group.parse("e") == group.identity
    assert TorsionGroup.elementary(0).format(()) == "e"


def test_parse_rejects_out_of_range_exponent():
    with pytest.raises(DomainError):
        TorsionGroup.elementary(1).parse("20")


def test_beta_on_odd_group_is_a_cube_root_of_unity():
    group = TorsionGroup((3,))
    a, b = group.basis()
    value = group.beta(a, b)
    assert value * value * value == 1
    assert value != 1


def test_beta_eval_and_quad_sign_helpers():
    group = TorsionGroup.elementary(1)
    a, b = group.basis()
    assert beta_eval(group, a, b) == -1
    assert quad_sign(group, group.mul(a, b)) == -1
