import pytest

from polyobstruct import (
    ETA,
    Ellipsoid,
    Polydisc,
    Regime,
    TorusBox,
    ellipsoid_fits_box,
    monodromy_angle,
    pr,
    ratio_is_generic,
    select_regime,
    skinny_capacities,
    skinny_ellipsoid,
)
from polyobstruct.errors import DimensionMismatch, DomainError, InvalidDomain, NoRegime


def test_ellipsoid_sorts_and_validates():
    e = Ellipsoid((pr(5), pr(1, -1), pr(3)))
    assert e.capacities == (pr(1, -1), pr(3), pr(5))
    with pytest.raises(InvalidDomain):
        Ellipsoid((pr(1), pr(2)))  # resonant ratio 2
    with pytest.raises(InvalidDomain):
        Ellipsoid((pr(1), pr(1)))
    with pytest.raises(InvalidDomain):
        Ellipsoid((pr(1),))


def test_polydisc_basic():
    p = Polydisc((pr(3), pr(1)))
    assert p.capacities == (pr(1), pr(3))
    with pytest.raises(InvalidDomain):
        Polydisc((pr(0), pr(1)))


def test_select_regime_reference_instance():
    reg = select_regime(3, "3", "3/2", "5/2")
    assert reg.d == 4
    assert reg.eps == pr("1/2")
    assert reg.deltas[0] == reg.eps / 1000 + ETA
    assert reg.deltas[1] == reg.eps / 2000 + 2 * ETA
    # stability under re-validation
    reg.validate()


def test_select_regime_small_instance():
    reg = select_regime(3, "5/2", "1", "2")
    assert reg.d >= 2
    reg.validate()


def test_select_regime_rejections():
    with pytest.raises(NoRegime):
        select_regime(3, "3", "2", "3")
    with pytest.raises(NoRegime):
        select_regime(3, "2", "3/2", "3/2")
    with pytest.raises(DomainError):
        select_regime(2, "3", "3/2", "3/2")
    with pytest.raises(DomainError):
        select_regime(3, "3", "3/2", "1")


def test_regime_invariants_reject_bad_values():
    reg = select_regime(3, "3", "3/2", "5/2")
    with pytest.raises(InvalidDomain):
        Regime(
            n=3, x=reg.x, a=reg.a, b=reg.b, d=1, eps=reg.eps,
            deltas=reg.deltas, S=reg.S,
        )
    with pytest.raises(InvalidDomain):
        Regime(
            n=3, x=reg.x, a=reg.a, b=reg.b, d=reg.d, eps=reg.eps,
            deltas=reg.deltas, S=pr(1),
        )
    # resonant delta ratios: identical eta tags
    with pytest.raises(InvalidDomain):
        Regime(
            n=3, x=reg.x, a=reg.a, b=reg.b, d=reg.d, eps=reg.eps,
            deltas=(reg.eps / 1000 + ETA, reg.eps / 2000 + ETA, reg.eps / 2000 + ETA),
            S=reg.S,
        )


def test_regime_round_trip():
    reg = select_regime(3, "3", "3/2", "5/2")
    assert Regime.from_jsonable(reg.to_jsonable()) == reg


def test_skinny_capacities_hand_substitution():
    caps = skinny_capacities(pr("1/10"), (pr("1/1000", 1), pr("1/2000", 2), pr("1/2000", 3)), 4)
    assert caps[0] == pr("99/1000", -1)
    assert caps[1] == 9 * pr("199/2000", -2)
    assert caps[2] == 9 * pr("199/2000", -3)
    # sorted check passes after construction
    Ellipsoid(caps)


def test_skinny_ellipsoid_properties(reference_regime):
    e = skinny_ellipsoid(reference_regime)
    assert e.n == 3
    assert e.capacities[0] == reference_regime.eps - reference_regime.deltas[0]
    assert e.capacities[0] / e.capacities[1] < 1
    for i, ci in enumerate(e.capacities):
        for j, cj in enumerate(e.capacities):
            if i != j:
                assert ratio_is_generic(ci, cj)


def test_monodromy_ratio_window(reference_regime):
    theta = monodromy_angle(skinny_ellipsoid(reference_regime))
    scale = reference_regime.two_d_plus_one
    assert 0 < scale * theta < 1


def test_torus_box_from_regime(reference_regime):
    reg = reference_regime
    box = TorusBox.from_regime(reg)
    assert box.widths[0] == reg.eps
    assert box.widths[1] == reg.two_d_plus_one * reg.eps
    assert box.widths[2] == reg.S / 2
    assert box.torus_point == reg.torus_anchor
    # The rule regime's box is wide in the second axis; only widths and the
    # anchor enter the argument, and the anchor always sits inside.
    assert not box.in_first_orthant
    assert all(lo < pt < hi for lo, pt, hi in zip(box.lower, box.torus_point, box.upper))


def test_torus_box_validation():
    with pytest.raises(InvalidDomain):
        TorusBox(2, (pr(1), pr(1)), (pr(2), pr(1)), (pr("3/2"), pr(1)))
    with pytest.raises(InvalidDomain):
        TorusBox(2, (pr(0), pr(0)), (pr(1), pr(1)), (pr("3/2"), pr("1/2")))


def test_ellipsoid_fits_box(reference_regime):
    reg = reference_regime
    assert ellipsoid_fits_box(skinny_ellipsoid(reg), TorusBox.from_regime(reg))
    hand_box = TorusBox(2, (pr(1), pr(2)), (pr(2), pr(3)), (pr("3/2"), pr("5/2")))
    assert not ellipsoid_fits_box(Ellipsoid((pr(2, 1), pr(3, -1))), hand_box)
    # strict inequality required
    eps = pr("1/10")
    tight_box = TorusBox(
        2, (pr(1), pr(1)), (pr(1) + eps, pr(1) + 2 * eps), (pr(1) + eps / 2, pr(1) + eps)
    )
    assert not ellipsoid_fits_box(Ellipsoid((eps + ETA, 2 * eps - ETA)), tight_box)
    with pytest.raises(DimensionMismatch):
        ellipsoid_fits_box(Ellipsoid((pr(1, 1), pr(2, -1), pr(3))), hand_box)


def test_regime_grid_revalidation():
    for x in ("5/2", "3", "4"):
        for a in ("1", "4/3", "3/2", "9/5"):
            for b in (a, "2", "5/2"):
                if pr(b) < pr(a) or not pr(b) < pr(x):
                    continue
                reg = select_regime(3, x, a, b)
                reg.validate()
                assert (2 - reg.a) * reg.d > reg.b - 1
