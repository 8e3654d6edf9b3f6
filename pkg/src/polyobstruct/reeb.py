"""Closed Reeb orbits: classification, periods/actions, monodromy angles.

On a generic ellipsoid boundary the only closed orbits are the coordinate
circles, one per axis, with period equal to the capacity.  On the smoothed
torus boundary the closed orbits come in ``(n-1)``-dimensional families
labeled by nonzero integer homology classes; only the class (and its action)
enters the argument, so that is all this module records.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .domains import Ellipsoid, Regime
from .errors import DimensionMismatch, InvalidDomain
from .exactnum import PerturbedRational, RationalLike


@dataclass(frozen=True)
class EllipsoidAxis:
    """An ``r``-fold cover of the simple orbit in coordinate plane ``axis``."""

    axis: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.axis < 1:
            raise InvalidDomain("ellipsoid axes are 1-based")
        if self.multiplicity < 1:
            raise InvalidDomain("cover multiplicity must be >= 1")


@dataclass(frozen=True)
class TorusClass:
    """A torus-boundary orbit family, labeled by ``(k, l, m_1..m_{n-2})``."""

    winding: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "winding", tuple(int(w) for w in self.winding))
        if len(self.winding) < 2:
            raise InvalidDomain("torus classes need at least (k, l)")
        if all(w == 0 for w in self.winding):
            raise InvalidDomain("the zero class is not a Reeb orbit")

    @property
    def k(self) -> int:
        return self.winding[0]

    @property
    def l(self) -> int:
        return self.winding[1]

    @property
    def m(self) -> tuple[int, ...]:
        return self.winding[2:]


OrbitClass = Union[EllipsoidAxis, TorusClass]


def family_dimension(orbit: OrbitClass, n: int) -> int:
    """Dimension of the Morse-Bott family containing the orbit.

    Ellipsoid orbits are isolated; torus orbits translate in an
    ``(n-1)``-dimensional family.
    """
    return 0 if isinstance(orbit, EllipsoidAxis) else n - 1


def ellipsoid_orbits(e: Ellipsoid) -> list[tuple[EllipsoidAxis, PerturbedRational]]:
    """The simple closed orbits with their periods, shortest first.

    Axis ``i`` carries the orbit of period ``r_i`` (capacity units, which
    already absorb the factor of pi).  Genericity of the capacity ratios is
    an :class:`Ellipsoid` invariant, so exactly ``n`` orbits exist.
    """
    return [
        (EllipsoidAxis(axis=i, multiplicity=1), cap)
        for i, cap in enumerate(e.capacities, start=1)
    ]


def monodromy_angle(e: Ellipsoid) -> PerturbedRational:
    """Rotation angle ``r_1/r_2`` of the short orbit's linearized return map.

    For ellipsoids with more than two capacities the first two (sorted)
    capacities are used.
    """
    return e.capacities[0] / e.capacities[1]


def torus_action(
    winding: tuple[int, ...],
    eps: RationalLike,
    d: int,
    S: RationalLike,
) -> PerturbedRational:
    """Action ``(eps/2)|k| + ((2d+1)eps/2)|l| + (S/4)*sum|m_j|``."""
    eps = PerturbedRational.coerce(eps)
    s = PerturbedRational.coerce(S)
    k, l, m = winding[0], winding[1], winding[2:]
    return (
        eps / 2 * abs(k)
        + (2 * d + 1) * eps / 2 * abs(l)
        + s / 4 * sum(abs(mj) for mj in m)
    )


def torus_orbit_action(c: TorusClass, reg: Regime) -> PerturbedRational:
    """Exact action of the orbit class ``c`` on the regime's torus boundary.

    The primitive is anchored at the Lagrangian torus, which makes the
    familiar absolute-value formula exact (the smoothing correction is zero
    in this convention).

    Raises:
        DimensionMismatch: if the class length differs from ``reg.n``.
    """
    if len(c.winding) != reg.n:
        raise DimensionMismatch(
            f"class has {len(c.winding)} entries but the regime has n={reg.n}"
        )
    return torus_action(c.winding, reg.eps, reg.d, reg.S)


def torus_m_vanishing(c: TorusClass, budget: RationalLike, reg: Regime) -> bool:
    """Check that an action budget forces the stabilized windings to vanish.

    Returns False exactly when some ``m_j != 0`` and the orbit's action still
    fits inside ``budget`` - a regime violation, since ``S/4`` is supposed to
    dwarf every curve area in play.
    """
    budget = PerturbedRational.coerce(budget)
    if all(mj == 0 for mj in c.m):
        return True
    return torus_orbit_action(c, reg) > budget
