import pytest

from algebra.symplectic import (
    NATURAL,
    TWISTED,
    MultisetSigma,
    SymplecticMap,
    act,
    acting_generators,
    as_point_map,
    aut_group,
    canonical_form,
    orbit,
    orbit_witness,
    sigma_stabilizer,
    symplectic_order_formula,
    t_alpha,
)
from algebra.torsion import TorsionGroup


@pytest.mark.parametrize("r, order", [(1, 6), (2, 720)])
def test_sp_order(r, order):
    assert aut_group(TorsionGroup.elementary(r)).order == order
    assert symplectic_order_formula(r) == order


@pytest.mark.slow
def test_sp6_order():
    assert aut_group(TorsionGroup.elementary(3)).order == 1451520


def test_odd_group_order():
    # SL_2(3)
    assert aut_group(TorsionGroup((3,))).order == 24


def test_generators_preserve_beta():
    for a in aut_group(TorsionGroup.elementary(2)).generators:
        assert a.is_automorphism()


def test_twisted_action_preserves_quadratic_sign():
    group = TorsionGroup.elementary(2)
    for g in acting_generators(group, TWISTED):
        for t in group.elements():
            assert group.quad_sign(act(TWISTED, g, t)) == group.quad_sign(t)


def test_t_alpha_of_identity_is_trivial():
    group = TorsionGroup.elementary(2)
    assert t_alpha(group, SymplecticMap.identity(group)) == group.identity


def test_minus_part_is_one_twisted_orbit():
    group = TorsionGroup.elementary(2)
    t = group.minus_part()[0]
    points = orbit(group, MultisetSigma.from_tau([t]), TWISTED)
    assert {s.flat()[0] for s in points} == set(group.minus_part())


def test_natural_action_is_transitive_on_points():
    group = TorsionGroup.elementary(1)
    points = orbit(group, MultisetSigma.from_tau([group.identity]), NATURAL)
    assert len(points) == group.order


def test_orbit_witness_carries_source_to_target():
    group = TorsionGroup.elementary(1)
    source = MultisetSigma.from_tau([group.identity, group.parse("10")])
    target = MultisetSigma.from_tau([group.parse("01"), group.parse("11")])
    g = orbit_witness(group, source, target, NATURAL)
    assert g is not None
    assert source.image(g) == target


def test_canonical_form_is_orbit_invariant():
    group = TorsionGroup.elementary(1)
    a = MultisetSigma.from_tau([group.parse("10"), group.parse("01")])
    b = MultisetSigma.from_tau([group.parse("11"), group.identity])
    assert canonical_form(group, a, NATURAL) == canonical_form(group, b, NATURAL)


def test_stabilizer_of_empty_multiset_is_everything():
    group = TorsionGroup.elementary(1)
    stab = sigma_stabilizer(group, MultisetSigma.from_tau([]), TWISTED)
    assert stab.order == 6
    assert stab.orbit_size == 1


def test_stabilizer_methods_agree():
    group = TorsionGroup.elementary(2)
    sigma = MultisetSigma.from_tau([group.minus_part()[0]])
    by_enumeration = sigma_stabilizer(group, sigma, TWISTED, method="enumerate")
    by_schreier = sigma_stabilizer(group, sigma, TWISTED, method="schreier")
    assert by_enumeration.order == by_schreier.order == 720 // 6


@pytest.mark.parametrize("r", [1, 2])
def test_every_twisted_map_preserves_the_quadratic_sign(r):
    group = TorsionGroup.elementary(r)
    maps = list(aut_group(group).elements())
    assert len(maps) == symplectic_order_formula(r)
    for alpha in maps:
        assert group.quad_sign(t_alpha(group, alpha)) == 1
        image = as_point_map(TWISTED, alpha)
        assert sorted(image(t) for t in group.plus_part()) == sorted(group.plus_part())
        assert sorted(image(t) for t in group.minus_part()) == sorted(group.minus_part())


@pytest.mark.parametrize("r", [1, pytest.param(2, marks=pytest.mark.slow)])
def test_twisted_action_law_on_every_pair(r):
    group = TorsionGroup.elementary(r)
    maps = list(aut_group(group).elements())
    shifts = {alpha.images: t_alpha(group, alpha) for alpha in maps}
    for alpha in maps:
        for beta in maps:
            composite = alpha.compose(beta).images
            assert shifts[composite] == group.mul(alpha(shifts[beta.images]), shifts[alpha.images])


def test_twisted_action_composes_pointwise():
    group = TorsionGroup.elementary(1)
    maps = list(aut_group(group).elements())
    for alpha in maps:
        for beta in maps:
            for t in group.elements():
                assert act(TWISTED, alpha.compose(beta), t) == act(TWISTED, alpha, act(TWISTED, beta, t))


def test_t_alpha_of_a_transvection():
    # a -> a, b -> ab
    group = TorsionGroup.elementary(1)
    a, b = group.basis()
    alpha = SymplecticMap(group, (a, group.mul(a, b)))
    assert alpha.is_automorphism()
    assert t_alpha(group, alpha) == a


def test_stabilizer_of_a_point_under_the_natural_action():
    group = TorsionGroup.elementary(1)
    stab = sigma_stabilizer(group, MultisetSigma.from_tau([group.parse("10")]), NATURAL)
    assert stab.orbit_size == 4
    assert stab.order == 6


def test_stabilizer_of_the_minus_point_is_all_of_sp2():
    group = TorsionGroup.elementary(1)
    stab = sigma_stabilizer(group, MultisetSigma.from_tau([group.parse("11")]), TWISTED)
    assert stab.order == 6
    assert stab.orbit_size == 1
