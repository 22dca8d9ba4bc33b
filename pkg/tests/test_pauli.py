import pytest

from algebra.cyclotomic import ONE
from algebra.exact_matrix import ExactMatrix
from algebra.pauli import build_pauli, identity_division_map, realize_division_map, transpose_signs
from algebra.symplectic import aut_group
from algebra.torsion import TorsionGroup


def test_basis_spans_the_matrix_algebra():
    division = build_pauli(TorsionGroup.elementary(2))
    assert division.basis_rank() == 16
    assert build_pauli(TorsionGroup((3,))).basis_rank() == 9


@pytest.mark.parametrize(
    "pairs",
    [(2,), (3,), (4,), (2, 2), (2, 3), pytest.param((4, 4), marks=pytest.mark.slow)],
)
def test_commutation_follows_beta(pairs):
    group = TorsionGroup(pairs)
    division = build_pauli(group)
    for u in group.elements():
        for v in group.elements():
            lhs = division.X(u) @ division.X(v)
            rhs = (division.X(v) @ division.X(u)).scale(group.beta(u, v))
            assert lhs == rhs


def test_transpose_sign_is_the_quadratic_sign():
    group = TorsionGroup.elementary(2)
    signs = transpose_signs(build_pauli(group))
    assert signs == {t: group.quad_sign(t) for t in group.elements()}


def test_identity_element_is_the_unit_matrix():
    group = TorsionGroup.elementary(1)
    assert build_pauli(group).X(group.identity) == ExactMatrix.identity(2)


def test_decompose_recovers_coefficients():
    group = TorsionGroup.elementary(1)
    division = build_pauli(group)
    a, b = group.basis()
    block = division.X(a) + division.X(b).scale(ONE + ONE)
    parts = division.decompose(block)
    assert parts == {a: ONE, b: ONE + ONE}


def test_lifted_symplectic_maps_are_multiplicative():
    group = TorsionGroup.elementary(1)
    division = build_pauli(group)
    for alpha in aut_group(group).generators:
        psi0 = realize_division_map(division, alpha)
        for u in group.elements():
            image, c = psi0.image(u)
            assert image == alpha(u)
            assert c != 0


def test_identity_division_map():
    assert identity_division_map(TorsionGroup.elementary(1)).is_identity()
