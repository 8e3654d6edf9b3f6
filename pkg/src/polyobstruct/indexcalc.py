"""Conley-Zehnder and Fredholm index calculus for punctured genus-zero curves.

Everything here is closed-form integer/half-integer arithmetic on exact
inputs: rotation indices, ellipsoid-cover and torus-class Conley-Zehnder
indices, the virtual index of a curve with prescribed asymptotics, the index
of a matched building, and the small identities (adjunction defect, Kunneth
dimension, Riemann-Hurwitz cover bound, stabilization shift) that the
obstruction argument leans on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .domains import Ellipsoid, Regime
from .errors import (
    DimensionMismatch,
    FloorNotVanishing,
    InvalidDomain,
    MalformedMatching,
    PreconditionFailed,
)
from .exactnum import PerturbedRational, RationalLike, floor_generic
from .reeb import EllipsoidAxis, OrbitClass, TorusClass, family_dimension

HalfInteger = Union[int, Fraction]


def _maybe_int(value: Fraction) -> HalfInteger:
    return int(value) if value.denominator == 1 else value


def cz_rotation(total_angle: RationalLike) -> int:
    """Conley-Zehnder index of a planar rotation path with total angle ``T``.

    Equals ``floor(T) + ceil(T) = 2*floor(T) + 1`` for generic ``T > 0``.

    Raises:
        DegenerateValue: propagated when ``T`` is an exact untagged integer.
    """
    t = PerturbedRational.coerce(total_angle)
    if not t > 0:
        raise PreconditionFailed("rotation angle must be positive")
    return 2 * floor_generic(t) + 1


def cz_ellipsoid_cover(e: Ellipsoid, axis: int, r: int) -> int:
    """Conley-Zehnder index of the ``r``-fold cover of the orbit on ``axis``.

    ``2r + 2*sum_j floor(r * r_axis / r_j) + (n - 1)`` with the sum over the
    other axes.  Genericity of the ratios is an ellipsoid invariant, but a
    resonant multiple ``r * r_axis / r_j`` still raises ``DegenerateValue``.
    """
    if not 1 <= axis <= e.n:
        raise InvalidDomain(f"axis {axis} out of range for n={e.n}")
    if r < 1:
        raise InvalidDomain("cover multiplicity must be >= 1")
    period = e.capacities[axis - 1]
    total = 2 * r + (e.n - 1)
    for j, cap in enumerate(e.capacities, start=1):
        if j != axis:
            total += 2 * floor_generic(r * period / cap)
    return total


def cz_torus_class(c: TorusClass, n: int) -> HalfInteger:
    """Conley-Zehnder index ``2(k + l + sum m_j) + (n-1)/2`` of a torus class.

    Integer for odd ``n`` (in particular ``2(k+l+m)+1`` at ``n = 3``),
    half-integer otherwise.
    """
    if len(c.winding) != n:
        raise DimensionMismatch(f"class has {len(c.winding)} entries, expected n={n}")
    return _maybe_int(2 * Fraction(sum(c.winding)) + Fraction(n - 1, 2))


def cz_minus_halfdim(c: TorusClass, n: int) -> int:
    """``CZ(c) - dim(c)/2 = 2(k + l)`` for torus classes with vanishing ``m``.

    This combination is what enters the index formula at a negative end, and
    it is independent of ``n``.

    Raises:
        NonzeroM: if any stabilized winding is nonzero.
    """
    from .errors import NonzeroM

    if len(c.winding) != n:
        raise DimensionMismatch(f"class has {len(c.winding)} entries, expected n={n}")
    if any(mj != 0 for mj in c.m):
        raise NonzeroM(f"class {c.winding} has nonzero stabilized winding")
    return 2 * (c.k + c.l)


@dataclass(frozen=True)
class CurveSpec:
    """A genus-zero punctured curve: bidegree plus asymptotic orbit data."""

    n: int
    bidegree: tuple[int, int]
    positive_ends: tuple[OrbitClass, ...] = ()
    negative_ends: tuple[OrbitClass, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bidegree", (int(self.bidegree[0]), int(self.bidegree[1])))
        object.__setattr__(self, "positive_ends", tuple(self.positive_ends))
        object.__setattr__(self, "negative_ends", tuple(self.negative_ends))
        if self.n < 2:
            raise InvalidDomain("curves need ambient half-dimension n >= 2")
        if self.bidegree[0] < 0 or self.bidegree[1] < 0:
            raise InvalidDomain("bidegree components must be non-negative")
        for end in self.positive_ends + self.negative_ends:
            if isinstance(end, TorusClass) and len(end.winding) != self.n:
                raise DimensionMismatch(
                    f"torus end {end.winding} does not match n={self.n}"
                )

    def to_jsonable(self) -> dict:
        return {
            "n": self.n,
            "bidegree": list(self.bidegree),
            "positive_ends": [orbit_to_jsonable(e) for e in self.positive_ends],
            "negative_ends": [orbit_to_jsonable(e) for e in self.negative_ends],
        }

    @classmethod
    def from_jsonable(cls, payload: dict) -> "CurveSpec":
        return cls(
            n=int(payload["n"]),
            bidegree=tuple(payload["bidegree"]),
            positive_ends=tuple(
                orbit_from_jsonable(e) for e in payload.get("positive_ends", [])
            ),
            negative_ends=tuple(
                orbit_from_jsonable(e) for e in payload.get("negative_ends", [])
            ),
        )


MatchEndpoint = tuple[int, str, int]  # (component index, "positive"/"negative", end index)


@dataclass(frozen=True)
class BuildingSpec:
    """Curves glued along pairs of ends carrying the same orbit class."""

    components: tuple[CurveSpec, ...]
    matchings: tuple[tuple[MatchEndpoint, MatchEndpoint], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(
            self,
            "matchings",
            tuple((tuple(a), tuple(b)) for a, b in self.matchings),
        )
        if not self.components:
            raise MalformedMatching("a building needs at least one component")
        n = self.components[0].n
        if any(c.n != n for c in self.components):
            raise MalformedMatching("all components must share the ambient dimension")
        seen: set[MatchEndpoint] = set()
        for a, b in self.matchings:
            ca, cb = self._end_class(a), self._end_class(b)
            if a[1] == b[1]:
                raise MalformedMatching("matched ends must have opposite signs")
            if ca != cb:
                raise MalformedMatching(f"matched ends carry different orbits: {ca} vs {cb}")
            for endpoint in (a, b):
                if endpoint in seen:
                    raise MalformedMatching(f"end {endpoint} matched twice")
                seen.add(endpoint)

    def _end_class(self, endpoint: MatchEndpoint) -> OrbitClass:
        ci, side, ei = endpoint
        if not 0 <= ci < len(self.components):
            raise MalformedMatching(f"component index {ci} out of range")
        ends = (
            self.components[ci].positive_ends
            if side == "positive"
            else self.components[ci].negative_ends
            if side == "negative"
            else None
        )
        if ends is None:
            raise MalformedMatching(f"unknown end side {side!r}")
        if not 0 <= ei < len(ends):
            raise MalformedMatching(f"end index {ei} out of range for {side} ends")
        return ends[ei]

    def to_jsonable(self) -> dict:
        return {
            "components": [c.to_jsonable() for c in self.components],
            "matchings": [[list(a), list(b)] for a, b in self.matchings],
        }

    @classmethod
    def from_jsonable(cls, payload: dict) -> "BuildingSpec":
        return cls(
            components=tuple(
                CurveSpec.from_jsonable(c) for c in payload["components"]
            ),
            matchings=tuple(
                ((m[0][0], m[0][1], m[0][2]), (m[1][0], m[1][1], m[1][2]))
                for m in payload.get("matchings", [])
            ),
        )


def orbit_to_jsonable(orbit: OrbitClass) -> dict:
    if isinstance(orbit, EllipsoidAxis):
        return {"type": "ellipsoid", "axis": orbit.axis, "multiplicity": orbit.multiplicity}
    return {"type": "torus", "class": list(orbit.winding)}


def orbit_from_jsonable(payload: dict) -> OrbitClass:
    if payload["type"] == "ellipsoid":
        return EllipsoidAxis(axis=int(payload["axis"]), multiplicity=int(payload["multiplicity"]))
    if payload["type"] == "torus":
        return TorusClass(winding=tuple(payload["class"]))
    raise InvalidDomain(f"unknown orbit type {payload['type']!r}")


def _end_cz(end: OrbitClass, n: int, ellipsoid: Optional[Ellipsoid]) -> Fraction:
    if isinstance(end, TorusClass):
        return Fraction(cz_torus_class(end, n))
    if ellipsoid is not None:
        if ellipsoid.n != n:
            raise DimensionMismatch(
                f"ellipsoid has n={ellipsoid.n} but the curve has n={n}"
            )
        return Fraction(cz_ellipsoid_cover(ellipsoid, end.axis, end.multiplicity))
    if end.axis != 1:
        raise PreconditionFailed(
            "ellipsoid capacities are required for ends on an axis other than the "
            "short orbit"
        )
    # Short-orbit cover on a skinny ellipsoid: every floor term vanishes.
    return Fraction(2 * end.multiplicity + (n - 1))


def fredholm_index(u: CurveSpec, ellipsoid: Optional[Ellipsoid] = None) -> HalfInteger:
    """Virtual Fredholm index of a genus-zero curve with prescribed ends.

    ``(n-3)(2 - s+ - s-) + 2*c_tau + sum+[CZ + dim/2] - sum-[CZ - dim/2]``
    with relative Chern class ``c_tau = 2*d1 + 2*d2``.  Symplectization
    curves are modeled with bidegree ``(0, 0)``.

    Ellipsoid ends need capacities to evaluate their floor terms; without an
    explicit ``ellipsoid`` the short-orbit convention ``CZ = 2r + (n-1)``
    (all floors vanishing, as on the regime's skinny ellipsoid) is used.
    """
    n = u.n
    s_plus = len(u.positive_ends)
    s_minus = len(u.negative_ends)
    d1, d2 = u.bidegree
    total = Fraction((n - 3) * (2 - s_plus - s_minus) + 2 * (2 * d1 + 2 * d2))
    for end in u.positive_ends:
        total += _end_cz(end, n, ellipsoid) + Fraction(family_dimension(end, n), 2)
    for end in u.negative_ends:
        total += -_end_cz(end, n, ellipsoid) + Fraction(family_dimension(end, n), 2)
    return _maybe_int(total)


def closed_index(bidegree: tuple[int, int], n: int) -> int:
    """Virtual index ``2(n-3) + 2*c_tau`` of a closed genus-zero curve."""
    d1, d2 = bidegree
    if d1 < 0 or d2 < 0:
        raise InvalidDomain("bidegree components must be non-negative")
    return 2 * (n - 3) + 2 * (2 * d1 + 2 * d2)


def constrained_closed_index(bidegree: tuple[int, int], n: int, points: int) -> int:
    """Closed-curve index after imposing ``points`` generic point constraints."""
    if points < 0:
        raise InvalidDomain("point count must be non-negative")
    return closed_index(bidegree, n) - 2 * points


def building_index(
    building: BuildingSpec, ellipsoid: Optional[Ellipsoid] = None
) -> HalfInteger:
    """Index of a matched building: component indices minus matched family dims."""
    n = building.components[0].n
    total = Fraction(0)
    for component in building.components:
        total += Fraction(fredholm_index(component, ellipsoid))
    for a, _b in building.matchings:
        total -= family_dimension(building._end_class(a), n)
    return _maybe_int(total)


def stabilization_shift(index: int, s_minus: int) -> int:
    """Index of a stabilized curve: ``2 - 2*s_minus + index``.

    Stabilizing leaves the index unchanged exactly when the curve has a
    single negative end.
    """
    if s_minus < 0:
        raise InvalidDomain("negative-end count must be non-negative")
    return 2 - 2 * s_minus + index


def cover_index_bound(p: int, s_tilde: int, s: int) -> bool:
    """Whether a degree-``p`` cover with the given end counts can exist.

    The ramification over the punctures is ``p*s_tilde - s``; it must be
    non-negative and is capped at ``2p - 2`` by Riemann-Hurwitz.
    """
    if p < 1 or s_tilde < 1 or s < 1:
        raise InvalidDomain("cover data must be positive")
    ramification = p * s_tilde - s
    return 0 <= ramification <= 2 * p - 2


def multiple_cover_nonneg(
    u_tilde_index: int, p: int, n: int, s_tilde: int, s: int
) -> bool:
    """Non-negativity of a ``p``-fold cover's index over a non-negative curve.

    Evaluates ``(3-n)(s-2) + p * L`` where ``L`` is the end-independent part
    of the underlying curve's index.  At ``n = 3`` this equals
    ``p * u_tilde_index`` exactly and the whole chain is checked.

    Raises:
        PreconditionFailed: if the cover data violates Riemann-Hurwitz, the
            underlying index is negative, or ``n < 3``.
    """
    if not cover_index_bound(p, s_tilde, s):
        raise PreconditionFailed("no ramification profile exists for this cover data")
    if u_tilde_index < 0:
        raise PreconditionFailed("underlying curve must have non-negative index")
    if n < 3:
        raise PreconditionFailed("the cover argument needs n >= 3")
    linear_part = u_tilde_index + (n - 3) * (s_tilde - 2)
    cover_index = (3 - n) * (s - 2) + p * linear_part
    if n == 3 and cover_index != p * u_tilde_index:
        return False
    return cover_index >= 0


def adjunction_defect(bidegree: tuple[int, int]) -> int:
    """Adjunction surplus ``2 + 2*d1*d2 - 2*d1 - 2*d2`` of a bidegree class.

    Zero exactly for the embedded sphere classes; positive otherwise.
    """
    d1, d2 = bidegree
    if d1 < 0 or d2 < 0 or (d1, d2) == (0, 0):
        raise InvalidDomain("bidegree must be non-negative and nonzero")
    return 2 + 2 * d1 * d2 - 2 * d1 - 2 * d2


def kunneth_dimension(bidegree: tuple[int, int]) -> int:
    """Dimension ``(d1+1)(d2+1)`` of the section space of a bidegree class."""
    d1, d2 = bidegree
    if d1 < 0 or d2 < 0:
        raise InvalidDomain("bidegree components must be non-negative")
    return (d1 + 1) * (d2 + 1)


def kunneth_threshold(bidegree: tuple[int, int]) -> int:
    """Maximum number of generic points a curve of this bidegree may contain."""
    return kunneth_dimension(bidegree) - 1


def partition_is_trivial(m: int, theta: RationalLike) -> bool:
    """Whether the incoming end-partition of an ``m``-cover is the trivial one.

    Determined entirely by the monodromy angle: the partition is trivial
    exactly when ``floor(m * theta) = 0``.
    """
    if m < 1:
        raise InvalidDomain("cover multiplicity must be >= 1")
    theta = PerturbedRational.coerce(theta)
    if not theta > 0:
        raise PreconditionFailed("monodromy angle must be positive")
    return floor_generic(m * theta) == 0


def symplectization_index(
    positive_multiplicities: Sequence[int],
    neg_multiplicity: int,
    reg: Optional[Regime] = None,
) -> int:
    """Index of a symplectization curve over the short orbit.

    ``2(s+ - 1) + 2(sum a_p - neg)``; zero exactly for the trivial cylinder.
    The simplified formula omits floor terms that vanish for the regime's
    skinny ellipsoid; when a regime is supplied they are checked rather than
    trusted.

    Raises:
        FloorNotVanishing: if an omitted floor term is nonzero for ``reg``.
    """
    mults = [int(a) for a in positive_multiplicities]
    if any(a < 1 for a in mults) or neg_multiplicity < 1:
        raise InvalidDomain("cover multiplicities must be >= 1")
    if reg is not None:
        scale = reg.two_d_plus_one
        short = reg.eps - reg.deltas[0]
        for a in mults + [neg_multiplicity]:
            for dj in reg.deltas[1:]:
                if floor_generic(a * short / (scale * (reg.eps - dj))) != 0:
                    raise FloorNotVanishing(
                        f"floor term for multiplicity {a} does not vanish"
                    )
    s_plus = len(mults)
    return 2 * (s_plus - 1) + 2 * (sum(mults) - neg_multiplicity)
