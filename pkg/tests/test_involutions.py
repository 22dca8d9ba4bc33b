import itertools

import pytest

from algebra.grading import GradedMatrixAlgebra
from algebra.involutions import (
    build_phi,
    check_division_refinement,
    check_phi_grading,
    division_refinement,
    equivalent_involution,
    format_witness,
    involution_criterion,
    involution_equivalence_witness,
    involution_type,
    is_fine_phi,
    phi_fourth_is_identity,
    sesquilinear_witness,
    weak_equivalence_witness,
    weakly_equivalent,
)
from algebra.torsion import TorsionGroup
from conftest import phi_spec, sampled_raw_specs, small_type_two_specs
from errors import DomainError
from models import GradingSpec, InvolutionType, Series


@pytest.mark.parametrize(
    "spec, expected",
    [
        (phi_spec(Series.B, 0, ["e"], s=1), InvolutionType.ORTHOGONAL),
        (phi_spec(Series.D, 1, ["00", "10"]), InvolutionType.ORTHOGONAL),
        (phi_spec(Series.C, 1, ["11"], s=1), InvolutionType.SYMPLECTIC),
        (phi_spec(Series.AII, 1, ["00", "11"]), InvolutionType.NOT_INVOLUTION),
        (phi_spec(Series.AII, 0, ["e"], s=1), InvolutionType.ORTHOGONAL),
    ],
    ids=lambda x: x.label() if isinstance(x, GradingSpec) else x.value,
)
def test_criterion_agrees_with_the_matrix_test(spec, expected):
    assert involution_criterion(spec) == expected
    assert involution_type(spec) == expected


def test_phi_preserves_the_grading():
    spec = phi_spec(Series.AII, 1, ["00", "10"])
    algebra = GradedMatrixAlgebra(spec)
    phi = build_phi(spec, algebra)
    assert check_phi_grading(algebra, phi)
    assert phi_fourth_is_identity(algebra, phi)


def test_phi_is_the_adjoint_of_its_form():
    spec = phi_spec(Series.C, 1, [], s=1)
    phi = build_phi(spec)
    assert sesquilinear_witness(spec, phi).adjoint_identity_holds(phi)


def test_raw_mu_values_enter_phi():
    spec = GradingSpec(series=Series.RAW_MPHI, r=0, q=0, s=1, tau=[], mu=[3])
    assert involution_criterion(spec) == InvolutionType.NOT_INVOLUTION
    algebra = GradedMatrixAlgebra(spec)
    assert check_phi_grading(algebra, build_phi(spec, algebra))


def test_type_one_specs_carry_no_phi(pauli_spec):
    with pytest.raises(DomainError):
        build_phi(pauli_spec)


def test_fineness():
    assert is_fine_phi(phi_spec(Series.AII, 1, ["00", "10"]))
    raw = GradingSpec(series=Series.RAW_MPHI, r=0, q=2, s=0, tau=["e", "e"], mu=[])
    assert not is_fine_phi(raw)


def test_weak_equivalence_by_translation():
    spec1 = phi_spec(Series.AII, 1, ["00", "10"])
    spec2 = phi_spec(Series.AII, 1, ["01", "11"])
    assert weakly_equivalent(spec1, spec2)
    witness = format_witness(weak_equivalence_witness(spec1, spec2))
    assert set(witness) == {"u", "alpha"}


def test_different_shapes_are_inequivalent():
    spec1 = phi_spec(Series.AII, 0, ["e", "e", "e"])
    spec2 = phi_spec(Series.AII, 0, ["e"], s=1)
    assert not weakly_equivalent(spec1, spec2)
    assert weak_equivalence_witness(spec1, spec2) is None


def test_symplectic_involutions_on_the_minus_part_are_equivalent():
    spec1 = phi_spec(Series.C, 2, ["11 00"])
    spec2 = phi_spec(Series.C, 2, ["00 11"])
    assert equivalent_involution(spec1, spec2)
    witness = involution_equivalence_witness(spec1, spec2)
    assert format_witness(witness) == {"alpha": [spec1.group.format(x) for x in witness.images]}


def test_non_involutions_are_never_equivalent_involutions():
    spec = phi_spec(Series.AII, 1, ["00", "11"])
    assert not equivalent_involution(spec, spec)
    assert involution_equivalence_witness(spec, spec) is None


def test_symplectic_and_orthogonal_of_one_shape_are_not_equivalent():
    symplectic = phi_spec(Series.C, 1, [], s=1)
    orthogonal = phi_spec(Series.D, 1, [], s=1)
    assert not equivalent_involution(symplectic, orthogonal)
    assert involution_equivalence_witness(symplectic, orthogonal) is None


def test_weak_equivalence_is_an_equivalence_relation():
    specs = [spec for spec in small_type_two_specs(max_r=1, max_q=3, max_s=0) if spec.r == 1]
    related = [[weakly_equivalent(a, b) for b in specs] for a in specs]
    n = len(specs)
    for i in range(n):
        assert related[i][i]
        for j in range(n):
            assert related[i][j] == related[j][i]
            for k in range(n):
                if related[i][j] and related[j][k]:
                    assert related[i][k]


@pytest.mark.parametrize("r, t", [(0, "e"), (1, "10"), (1, "11")])
def test_equal_singles_refine_to_a_division_grading(r, t):
    spec = GradingSpec(series=Series.RAW_MPHI, r=r, q=2, s=0, tau=[t, t], mu=[])
    refined = division_refinement(spec)
    assert (refined.r, refined.q, refined.s) == (r + 1, 1, 0)
    assert is_fine_phi(refined)
    assert check_division_refinement(spec, refined)


def test_fine_gradings_have_no_refinement():
    with pytest.raises(DomainError):
        division_refinement(phi_spec(Series.AII, 1, ["00", "10"]))


def _small_raw_specs():
    for r in (0, 1):
        elements = TorsionGroup.elementary(r).elements()
        group = TorsionGroup.elementary(r)
        for s in range(3):
            for q in range(0, 5 - 2 * s):
                if q + 2 * s == 0:
                    continue
                for tau in itertools.combinations_with_replacement(elements, q):
                    for mu in itertools.product((1, -1), repeat=s):
                        yield GradingSpec(
                            series=Series.RAW_MPHI,
                            r=r,
                            q=q,
                            s=s,
                            tau=[group.format(t) for t in tau],
                            mu=list(mu),
                        )


def test_criterion_agrees_with_the_matrix_test_on_small_specs():
    for spec in _small_raw_specs():
        assert involution_type(spec) == involution_criterion(spec)


@pytest.mark.slow
@pytest.mark.parametrize("spec", sampled_raw_specs(50, r=2), ids=lambda s: s.label())
def test_criterion_agrees_with_the_matrix_test_over_z2_to_the_fourth(spec):
    assert involution_type(spec) == involution_criterion(spec)
