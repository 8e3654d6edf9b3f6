import random
from fractions import Fraction

import pytest
from conftest import ramification_profile_exists, rotation_index_oracle

from polyobstruct import (
    ETA,
    BuildingSpec,
    CurveSpec,
    Ellipsoid,
    EllipsoidAxis,
    TorusClass,
    adjunction_defect,
    building_index,
    closed_index,
    constrained_closed_index,
    cover_index_bound,
    cz_ellipsoid_cover,
    cz_minus_halfdim,
    cz_rotation,
    cz_torus_class,
    fredholm_index,
    kunneth_dimension,
    kunneth_threshold,
    monodromy_angle,
    multiple_cover_nonneg,
    partition_is_trivial,
    pr,
    select_regime,
    skinny_ellipsoid,
    stabilization_shift,
    symplectization_index,
)
from polyobstruct.domains import skinny_capacities
from polyobstruct.errors import (
    DegenerateValue,
    FloorNotVanishing,
    InvalidDomain,
    MalformedMatching,
    NonzeroM,
    PreconditionFailed,
)


def test_cz_rotation_examples():
    assert cz_rotation(pr("1/2")) == 1
    assert cz_rotation(pr("5/2")) == 5
    assert cz_rotation(pr(1, 1)) == 3
    with pytest.raises(DegenerateValue):
        cz_rotation(pr(2))


def test_cz_ellipsoid_cover_simple_orbit():
    # capacities chosen so both floors vanish
    e = Ellipsoid((pr(1, -1), pr(3), pr(5)))
    assert cz_ellipsoid_cover(e, 1, 1) == 4


def test_cz_ellipsoid_cover_skinny(reference_regime):
    reg = reference_regime
    e = skinny_ellipsoid(reg)
    scale = reg.two_d_plus_one
    # all floors vanish for covers of the short orbit up to 2d+1
    assert cz_ellipsoid_cover(e, 1, scale) == 2 * scale + (reg.n - 1)


def test_cz_ellipsoid_cover_long_orbit_four_dim(reference_regime):
    reg = reference_regime
    e = Ellipsoid(skinny_capacities(reg.eps, reg.deltas, reg.d)[:2])
    r = 2
    expected_floor = r * reg.two_d_plus_one
    assert cz_ellipsoid_cover(e, 2, r) == 2 * r + 2 * expected_floor + 1


def test_cz_torus_class_examples():
    assert cz_torus_class(TorusClass((1, 0, 0)), 3) == 3
    assert cz_torus_class(TorusClass((-1, 0, 0)), 3) == -1
    assert cz_torus_class(TorusClass((2, -1, 1, 0)), 4) == Fraction(11, 2)


def test_cz_minus_halfdim():
    for n in range(3, 9):
        winding = (2, -1) + (0,) * (n - 2)
        assert cz_minus_halfdim(TorusClass(winding), n) == 2
        assert cz_minus_halfdim(TorusClass((-1, 0) + (0,) * (n - 2)), n) == -2
    with pytest.raises(NonzeroM):
        cz_minus_halfdim(TorusClass((1, 0, 2)), 3)


def test_fredholm_single_negative_plane():
    u = CurveSpec(n=3, bidegree=(0, 0), negative_ends=(TorusClass((-1, 0, 0)),))
    assert fredholm_index(u) == 2


def test_fredholm_big_plane():
    for d in (1, 2, 4, 7):
        u = CurveSpec(
            n=3, bidegree=(d, 1), negative_ends=(TorusClass((2 * d + 1, 0, 0)),)
        )
        assert fredholm_index(u) == 2


def test_fredholm_special_curve():
    for d in (1, 2, 4):
        scale = 2 * d + 1
        m = 2 * d + 2
        ends = (TorusClass((scale, 0, 0)),) + (TorusClass((-1, 0, 0)),) * scale
        assert len(ends) == m
        u = CurveSpec(
            n=3,
            bidegree=(0, 0),
            positive_ends=ends,
            negative_ends=(EllipsoidAxis(axis=1, multiplicity=scale),),
        )
        assert fredholm_index(u) == 2 * (m - 1) - 2 * scale == 0


def test_fredholm_special_curve_dimension_independent():
    d = 2
    scale = 2 * d + 1
    for n in range(3, 9):
        pad = (0,) * (n - 2)
        ends = (TorusClass((scale, 0) + pad),) + (TorusClass((-1, 0) + pad),) * scale
        u = CurveSpec(
            n=n,
            bidegree=(0, 0),
            positive_ends=ends,
            negative_ends=(EllipsoidAxis(axis=1, multiplicity=scale),),
        )
        assert fredholm_index(u) == 0


def test_fredholm_trivial_cylinder_all_dimensions():
    for n in range(3, 9):
        c = TorusClass((2, -1) + (0,) * (n - 2))
        u = CurveSpec(n=n, bidegree=(0, 0), positive_ends=(c,), negative_ends=(c,))
        assert fredholm_index(u) == n - 1


def test_fredholm_two_end_curve_four_dim(reference_regime):
    reg = reference_regime
    e = Ellipsoid(skinny_capacities(reg.eps, reg.deltas, reg.d)[:2])
    scale = reg.two_d_plus_one
    for r2 in range(0, scale + 1):
        r1 = scale - r2
        ends = tuple(
            EllipsoidAxis(axis=axis, multiplicity=r)
            for axis, r in ((1, r1), (2, r2))
            if r > 0
        )
        for d1 in range(0, reg.d + 2):
            for d2 in (0, 1):
                u = CurveSpec(n=2, bidegree=(d1, d2), negative_ends=ends)
                assert fredholm_index(u, e) == 4 * (d1 + d2) - 2 - 2 * scale * (r2 + 1)


def test_fredholm_ellipsoid_end_needs_capacities_off_short_axis():
    u = CurveSpec(
        n=2, bidegree=(0, 0), negative_ends=(EllipsoidAxis(axis=2, multiplicity=1),)
    )
    with pytest.raises(PreconditionFailed):
        fredholm_index(u)


def test_closed_index_examples():
    assert closed_index((0, 0), 3) == 2
    for k in range(0, 10):
        assert closed_index((k, 1), 2) == 4 * k + 2
    assert closed_index((4, 1), 3) == 4 * 4 + 6


def test_constrained_closed_index():
    for d in range(0, 12):
        assert constrained_closed_index((d, 1), 2, 2 * d + 1) == 0
    assert constrained_closed_index((3, 2), 2, 0) == closed_index((3, 2), 2)


def test_building_single_component_is_fredholm():
    u = CurveSpec(n=3, bidegree=(2, 1), negative_ends=(TorusClass((5, 0, 0)),))
    b = BuildingSpec(components=(u,))
    assert building_index(b) == fredholm_index(u)


def test_building_plane_through_trivial_cylinder():
    c = TorusClass((-1, 0, 0))
    plane = CurveSpec(n=3, bidegree=(0, 0), negative_ends=(c,))
    cylinder = CurveSpec(n=3, bidegree=(0, 0), positive_ends=(c,), negative_ends=(c,))
    b = BuildingSpec(
        components=(plane, cylinder),
        matchings=(((0, "negative", 0), (1, "positive", 0)),),
    )
    assert building_index(b) == 2 + 2 - 2 == 2


def test_building_special_curve_cancellation():
    d = 2
    scale = 2 * d + 1
    ends = (TorusClass((scale, 0, 0)),) + (TorusClass((-1, 0, 0)),) * scale
    special = CurveSpec(
        n=3,
        bidegree=(0, 0),
        positive_ends=ends,
        negative_ends=(EllipsoidAxis(axis=1, multiplicity=scale),),
    )
    planes = [CurveSpec(n=3, bidegree=(d, 1), negative_ends=(ends[0],))] + [
        CurveSpec(n=3, bidegree=(0, 0), negative_ends=(c,)) for c in ends[1:]
    ]
    matchings = tuple(
        ((0, "positive", j), (j + 1, "negative", 0)) for j in range(len(ends))
    )
    b = BuildingSpec(components=(special, *planes), matchings=matchings)
    assert building_index(b) == 0


def test_building_matching_validation():
    c = TorusClass((-1, 0, 0))
    plane = CurveSpec(n=3, bidegree=(0, 0), negative_ends=(c,))
    cylinder = CurveSpec(n=3, bidegree=(0, 0), positive_ends=(c,), negative_ends=(c,))
    with pytest.raises(MalformedMatching):
        BuildingSpec(
            components=(plane, cylinder),
            matchings=(((0, "negative", 0), (1, "negative", 0)),),
        )
    with pytest.raises(MalformedMatching):
        BuildingSpec(
            components=(plane, cylinder),
            matchings=(
                ((0, "negative", 0), (1, "positive", 0)),
                ((0, "negative", 0), (1, "positive", 0)),
            ),
        )
    other = CurveSpec(n=3, bidegree=(0, 0), negative_ends=(TorusClass((2, 0, 0)),))
    with pytest.raises(MalformedMatching):
        BuildingSpec(
            components=(other, cylinder),
            matchings=(((0, "negative", 0), (1, "positive", 0)),),
        )


def test_stabilization_shift():
    assert stabilization_shift(0, 1) == 0
    assert stabilization_shift(0, 2) == -2
    assert stabilization_shift(4, 0) == 6


def test_cover_index_bound_examples():
    assert cover_index_bound(1, 3, 3)
    assert cover_index_bound(3, 2, 2)
    assert not cover_index_bound(2, 3, 1)


def test_cover_index_bound_matches_profile_search():
    for p in range(1, 5):
        for s_tilde in range(1, 5):
            for s in range(1, p * s_tilde + 3):
                assert cover_index_bound(p, s_tilde, s) == ramification_profile_exists(
                    p, s_tilde, s
                ), (p, s_tilde, s)


def test_multiple_cover_nonneg():
    assert multiple_cover_nonneg(0, 2, 3, 1, 2)
    assert multiple_cover_nonneg(2, 3, 4, 2, 4)
    with pytest.raises(PreconditionFailed):
        multiple_cover_nonneg(0, 2, 3, 3, 1)
    with pytest.raises(PreconditionFailed):
        multiple_cover_nonneg(-2, 2, 3, 1, 2)


def test_multiple_cover_chain_at_n3():
    for u_idx in (0, 2, 4):
        for p in range(1, 5):
            for s_tilde in range(1, 4):
                for s in range(1, p * s_tilde + 1):
                    if cover_index_bound(p, s_tilde, s):
                        assert multiple_cover_nonneg(u_idx, p, 3, s_tilde, s)


def test_adjunction_defect():
    for d in range(1, 20):
        assert adjunction_defect((d, 1)) == 0
    assert adjunction_defect((1, 1)) == 0
    assert adjunction_defect((2, 2)) == 2
    with pytest.raises(InvalidDomain):
        adjunction_defect((0, 0))


def test_adjunction_grid_positivity():
    for d1 in range(1, 51):
        for d2 in range(1, 51):
            defect = adjunction_defect((d1, d2))
            assert defect >= 0
            assert (defect == 0) == (min(d1, d2) == 1 and (d1 - 1) * (d2 - 1) == 0)


def test_kunneth():
    assert kunneth_dimension((4, 1)) == 10
    assert kunneth_threshold((4, 1)) == 9
    assert kunneth_dimension((0, 0)) == 1
    assert kunneth_threshold((0, 0)) == 0
    assert kunneth_dimension((3, 2)) == 12
    assert kunneth_threshold((3, 2)) == 11


def test_partition_is_trivial(reference_regime):
    reg = reference_regime
    theta = monodromy_angle(skinny_ellipsoid(reg))
    assert partition_is_trivial(reg.two_d_plus_one, theta)
    assert not partition_is_trivial(3, pr("1/2", 1))
    assert partition_is_trivial(1, pr("1/10"))


def test_symplectization_index(reference_regime):
    reg = reference_regime
    scale = reg.two_d_plus_one
    assert symplectization_index([scale], scale, reg) == 0
    assert symplectization_index([reg.d, reg.d + 1], scale, reg) == 2
    assert symplectization_index([scale + 1], scale, reg) == 2
    with pytest.raises(FloorNotVanishing):
        symplectization_index([100 * scale], scale, reg)


def test_symplectization_zero_iff_trivial_cylinder(reference_regime):
    reg = reference_regime
    scale = reg.two_d_plus_one

    def partitions(n, max_part):
        if n == 0:
            yield ()
            return
        for first in range(min(n, max_part), 0, -1):
            for rest in partitions(n - first, first):
                yield (first,) + rest

    for total in range(scale, scale + 3):
        for mults in partitions(total, scale):
            index = symplectization_index(list(mults), scale, reg)
            assert index >= 0
            assert (index == 0) == (mults == (scale,))


def test_direct_sum_additivity_random_angles():
    rng = random.Random(7)
    angles = []
    while len(angles) < 1000:
        q = Fraction(rng.randint(1, 400), rng.randint(1, 40))
        tag = rng.choice((-1, 0, 1))
        if q.denominator == 1 and tag == 0:
            continue
        angles.append(pr(q, tag))
    for t1, t2 in zip(angles[0::2], angles[1::2]):
        assert cz_rotation(t1) + cz_rotation(t2) == rotation_index_oracle(
            t1
        ) + rotation_index_oracle(t2)


def test_czgam_from_primitives_random_ellipsoids():
    rng = random.Random(11)
    for trial in range(100):
        caps = sorted(
            Fraction(rng.randint(1, 60), rng.randint(1, 12)) for _ in range(3)
        )
        e = Ellipsoid(tuple(pr(c, i + 1) for i, c in enumerate(caps)))
        r = rng.randint(1, 4)
        r1 = e.capacities[0]
        recomputed = 2 * r + sum(
            rotation_index_oracle(r * r1 / e.capacities[j]) for j in (1, 2)
        )
        assert cz_ellipsoid_cover(e, 1, r) == recomputed
        assert (
            cz_ellipsoid_cover(e, 1, 1)
            == 4
            + 2 * (rotation_index_oracle(r1 / e.capacities[1]) - 1) // 2
            + 2 * (rotation_index_oracle(r1 / e.capacities[2]) - 1) // 2
        )
