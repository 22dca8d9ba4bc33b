import pytest

from algebra.classification import SERIES_A, check_range, enumerate_fine_gradings, torsion_groups
from algebra.involutions import equivalent_involution, weakly_equivalent
from errors import DomainError
from models import Series


@pytest.mark.parametrize(
    "series, n, count",
    [
        (Series.B, 5, 3),
        (Series.C, 4, 3),
        (SERIES_A, 3, 4),
    ],
)
def test_class_counts(series, n, count):
    assert len(enumerate_fine_gradings(series, n)) == count


def test_series_a_is_type_one_plus_type_two():
    total = enumerate_fine_gradings(SERIES_A, 4)
    assert len(total) == len(enumerate_fine_gradings(Series.AI, 4)) + len(enumerate_fine_gradings(Series.AII, 4))


def test_torsion_groups_of_degree_four():
    assert sorted(group.pairs for group in torsion_groups(4)) == [(2, 2), (4,)]


def test_type_one_skips_small_elementary_cases():
    specs = enumerate_fine_gradings(Series.AI, 4)
    assert all(spec.k >= 3 or not spec.group.is_elementary_two for spec in specs)


def test_representatives_are_pairwise_inequivalent():
    specs = enumerate_fine_gradings(Series.C, 8)
    for i, a in enumerate(specs):
        for b in specs[i + 1:]:
            assert not equivalent_involution(a, b)


def test_type_two_representatives_are_weakly_inequivalent():
    specs = enumerate_fine_gradings(Series.AII, 4)
    for i, a in enumerate(specs):
        for b in specs[i + 1:]:
            assert not weakly_equivalent(a, b)


def test_every_class_has_the_requested_size():
    for spec in enumerate_fine_gradings(Series.D, 6):
        assert spec.n == 6
        assert spec.delta == 1


@pytest.mark.parametrize("series, n", [(Series.B, 4), (Series.C, 5), (Series.D, 8), (Series.D, 4), (SERIES_A, 2)])
def test_out_of_range(series, n):
    with pytest.raises(DomainError):
        check_range(series, n)
