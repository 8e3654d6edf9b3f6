import pytest

from polyobstruct import (
    ETA,
    Ellipsoid,
    EllipsoidAxis,
    TorusClass,
    ellipsoid_orbits,
    family_dimension,
    monodromy_angle,
    pr,
    skinny_ellipsoid,
    torus_m_vanishing,
    torus_orbit_action,
)
from polyobstruct.errors import DimensionMismatch, InvalidDomain
from polyobstruct.reeb import torus_action


def test_orbit_class_validation():
    with pytest.raises(InvalidDomain):
        EllipsoidAxis(axis=0)
    with pytest.raises(InvalidDomain):
        EllipsoidAxis(axis=1, multiplicity=0)
    with pytest.raises(InvalidDomain):
        TorusClass((0, 0, 0))
    assert TorusClass((2, -1, 3)).m == (3,)


def test_family_dimensions():
    assert family_dimension(EllipsoidAxis(axis=1), 3) == 0
    assert family_dimension(TorusClass((1, 0, 0)), 3) == 2
    assert family_dimension(TorusClass((1, 0, 0, 0)), 4) == 3


def test_ellipsoid_orbits_periods():
    e = Ellipsoid((pr(1, -1), pr(3), pr(5)))
    table = ellipsoid_orbits(e)
    assert [orbit.axis for orbit, _ in table] == [1, 2, 3]
    assert [period for _, period in table] == list(e.capacities)


def test_short_orbit_of_skinny_ellipsoid(reference_regime):
    table = ellipsoid_orbits(skinny_ellipsoid(reference_regime))
    orbit, period = table[0]
    assert orbit.axis == 1
    assert period == reference_regime.eps - reference_regime.deltas[0]


def test_two_capacities_short_orbit():
    table = ellipsoid_orbits(Ellipsoid((pr(1, -1), pr(2, 1))))
    assert table[0][0].axis == 1


def test_monodromy_angle_division():
    assert monodromy_angle(Ellipsoid((pr(1), pr(2, 1)))) == pr("1/2", "-1/4")
    with pytest.raises(InvalidDomain):
        Ellipsoid((pr(2), pr(2)))


def test_torus_action_hand_evaluation():
    # (eps/2)|k| + ((2d+1)eps/2)|l| + (S/4)sum|m| at eps=1/10, d=4, S=100
    assert torus_action((1, 1, 1), pr("1/10"), 4, pr(100)) == pr("51/2")
    assert torus_action((-1, 0, 0), pr("1/10"), 4, pr(100)) == pr("1/20")
    assert torus_action((9, 0, 0), pr("1/10"), 4, pr(100)) == pr("9/20")


def test_torus_orbit_action_regime(reference_regime):
    reg = reference_regime
    scale = reg.two_d_plus_one
    assert torus_orbit_action(TorusClass((-1, 0, 0)), reg) == reg.eps / 2
    assert torus_orbit_action(TorusClass((scale, 0, 0)), reg) == scale * reg.eps / 2
    with pytest.raises(DimensionMismatch):
        torus_orbit_action(TorusClass((1, 0)), reg)


def test_action_positivity_and_additivity(reference_regime):
    reg = reference_regime
    for winding in [(1, -2, 3), (-4, 0, 0), (0, 1, 0), (0, 0, -2)]:
        c = TorusClass(winding)
        action = torus_orbit_action(c, reg)
        assert action > 0
        parts = sum(
            (
                torus_action(axis_only, reg.eps, reg.d, reg.S)
                for axis_only in [
                    (winding[0], 0, 0),
                    (0, winding[1], 0),
                    (0, 0, winding[2]),
                ]
            ),
            start=pr(0),
        )
        assert parts == action


def test_m_vanishing(reference_regime):
    reg = reference_regime
    budget = reg.budget
    assert torus_m_vanishing(TorusClass((0, 0, 1)), budget, reg)
    assert torus_m_vanishing(TorusClass((5, -3, 0)), budget, reg)
    assert not torus_m_vanishing(TorusClass((0, 0, 1)), reg.S, reg)


def test_nonzero_m_exceeds_budget(reference_regime):
    reg = reference_regime
    budget = reg.budget
    for m in (1, -1, 2):
        for k in (0, 3, -3):
            c = TorusClass((k, 0, m))
            assert torus_orbit_action(c, reg) > budget
