import pytest

from algebra.grading import GradedMatrixAlgebra
from algebra.presentation import (
    closed_form,
    elementary_divisors,
    gf2_rank,
    gf2_solve,
    support_coordinates,
    t0_dimension,
    universal_group,
)
from conftest import phi_spec, sampled_type_two_specs, small_type_two_specs
from models import GradingSpec, Series


def test_gf2_rank():
    assert gf2_rank([]) == 0
    assert gf2_rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2
    assert gf2_rank([[2, -1], [4, 3]]) == 1


def test_gf2_solve():
    x = gf2_solve([[1, 1, 0], [0, 1, 1]], [1, 0], 3)
    assert (x[0] + x[1]) % 2 == 1 and (x[1] + x[2]) % 2 == 0
    assert gf2_solve([[1, 1], [1, 1]], [0, 1], 2) is None
    assert gf2_solve([], [], 2) == [0, 0]


def test_elementary_divisors():
    assert elementary_divisors([12, 2]) == [2, 3, 4]


def test_pauli_universal_group_is_t(pauli_spec):
    model = universal_group(pauli_spec).to_model()
    assert (model.Z2, model.Z4, model.Z) == (2, 0, 0)


def test_odd_torsion_is_reported_explicitly():
    presentation = universal_group(GradingSpec(series=Series.AI, pairs=[3], k=2))
    assert presentation.free_rank == 1
    assert presentation.to_model().invariants == presentation.invariants


def test_type_one_free_rank():
    presentation = universal_group(GradingSpec(series=Series.AI, pairs=[], k=3))
    assert presentation.invariants == []
    assert presentation.free_rank == 2


def test_z2_times_z4():
    spec = phi_spec(Series.AII, 1, ["00", "10"])
    assert t0_dimension(spec) == 1
    model = universal_group(spec).to_model()
    assert (model.Z2, model.Z4, model.Z) == (1, 1, 0)


@pytest.mark.parametrize(
    "spec, divisors, free",
    [
        (phi_spec(Series.AII, 0, ["e", "e", "e"]), [2, 2], 0),
        (phi_spec(Series.AII, 1, [], s=1), [2, 2], 1),
        (phi_spec(Series.AII, 1, ["00", "10", "01", "11"]), [2, 4, 4], 0),
        (phi_spec(Series.B, 0, ["e", "e", "e"], s=1), [2, 2], 1),
    ],
    ids=lambda x: x.label() if isinstance(x, GradingSpec) else str(x),
)
def test_normal_form_matches_closed_form(spec, divisors, free):
    assert closed_form(spec) == (divisors, free)
    presentation = universal_group(spec)
    assert elementary_divisors(presentation.invariants) == divisors
    assert presentation.free_rank == free


def test_support_coordinates_respect_the_identification():
    spec = phi_spec(Series.AII, 1, ["00", "10"])
    algebra = GradedMatrixAlgebra(spec)
    presentation = universal_group(spec, algebra)
    coords = support_coordinates(algebra, presentation)
    assert len(coords) == len(algebra.support)
    # distinct support elements have distinct degrees in U
    assert len(set(coords.values())) == len(coords)


def test_normal_form_matches_closed_form_on_small_specs():
    for spec in small_type_two_specs():
        divisors, free = closed_form(spec)
        presentation = universal_group(spec)
        assert elementary_divisors(presentation.invariants) == divisors
        assert presentation.free_rank == free


@pytest.mark.parametrize("k", range(1, 6))
def test_type_one_universal_group_is_t_times_free(k):
    spec = GradingSpec(series=Series.RAW_M, pairs=[2], k=k)
    presentation = universal_group(spec)
    assert elementary_divisors(presentation.invariants) == [2, 2]
    assert presentation.free_rank == k - 1


@pytest.mark.slow
def test_normal_form_matches_closed_form_up_to_four_singles_and_two_pairs():
    for spec in small_type_two_specs(max_r=1, max_q=4, max_s=2):
        presentation = universal_group(spec)
        assert (elementary_divisors(presentation.invariants), presentation.free_rank) == closed_form(spec)


@pytest.mark.slow
@pytest.mark.parametrize("spec", sampled_type_two_specs(12, r=2, max_q=4, max_s=2), ids=lambda s: s.label())
def test_normal_form_matches_closed_form_over_z2_to_the_fourth(spec):
    presentation = universal_group(spec)
    assert (elementary_divisors(presentation.invariants), presentation.free_rank) == closed_form(spec)
