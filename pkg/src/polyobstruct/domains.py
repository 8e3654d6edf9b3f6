"""Toric domains and the parameter regime driving the obstruction argument.

The regime packs every parameter of the neck-stretching setup: the polydisc
capacities ``x, a, b``, the curve-degree scale ``d``, the box thickness
``eps``, the ellipsoid perturbations ``delta_1..delta_n`` and the large
stabilized capacity ``S``.  The asymptotic inequalities of the argument
("much larger than", "much smaller than") are made explicit through slack
knobs so that every invariant is an exact, testable comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, InvalidDomain, NoRegime, DomainError
from .exactnum import ETA, PerturbedRational, RationalLike, ratio_is_generic

# Validation floor for "delta_1 much smaller than eps"; construction uses the
# (larger) slack_delta knob, so rule-built regimes always clear this.
_DELTA_SLACK_FLOOR = 100

_MAX_D_SCAN = 1_000_000


def _coerce_all(values: Sequence[RationalLike]) -> tuple[PerturbedRational, ...]:
    return tuple(PerturbedRational.coerce(v) for v in values)


@dataclass(frozen=True)
class Ellipsoid:
    """Symplectic ellipsoid given by exact capacities, sorted ascending.

    Capacities are stored sorted (permuting coordinates is a linear
    symplectomorphism, so the order is a convention).  Every ordered pair of
    capacities must have a generic ratio; exact integer ratios are resonant
    and rejected.
    """

    capacities: tuple[PerturbedRational, ...]

    def __post_init__(self):
        caps = tuple(sorted(_coerce_all(self.capacities)))
        object.__setattr__(self, "capacities", caps)
        if len(caps) < 2:
            raise InvalidDomain("an ellipsoid needs at least two capacities")
        if any(c <= 0 for c in caps):
            raise InvalidDomain("ellipsoid capacities must be positive")
        for i, ci in enumerate(caps):
            for j, cj in enumerate(caps):
                if i != j and not ratio_is_generic(ci, cj):
                    raise InvalidDomain(
                        f"capacity ratio {ci}/{cj} is resonant; perturb the inputs"
                    )

    @property
    def n(self) -> int:
        return len(self.capacities)


@dataclass(frozen=True)
class Polydisc:
    """Symplectic polydisc given by exact capacities, sorted ascending."""

    capacities: tuple[PerturbedRational, ...]

    def __post_init__(self):
        caps = tuple(sorted(_coerce_all(self.capacities)))
        object.__setattr__(self, "capacities", caps)
        if len(caps) < 2:
            raise InvalidDomain("a polydisc needs at least two capacities")
        if any(c <= 0 for c in caps):
            raise InvalidDomain("polydisc capacities must be positive")

    @property
    def n(self) -> int:
        return len(self.capacities)


@dataclass(frozen=True)
class TorusBox:
    """Box neighborhood of a Lagrangian torus in the moment image.

    ``lower``/``upper`` are the per-axis interval bounds, ``torus_point`` the
    moment coordinates of the torus itself.  The torus point must sit
    strictly inside the box and have positive coordinates.  Whether the whole
    box lies in the open first orthant is exposed as a property rather than
    enforced: the regime's box is deliberately wide in the second axis and
    may dip below zero there (only its widths and anchor enter the argument).
    """

    n: int
    lower: tuple[PerturbedRational, ...]
    upper: tuple[PerturbedRational, ...]
    torus_point: tuple[PerturbedRational, ...]

    def __post_init__(self):
        object.__setattr__(self, "lower", _coerce_all(self.lower))
        object.__setattr__(self, "upper", _coerce_all(self.upper))
        object.__setattr__(self, "torus_point", _coerce_all(self.torus_point))
        if not (len(self.lower) == len(self.upper) == len(self.torus_point) == self.n):
            raise InvalidDomain("axis count mismatch in TorusBox")
        if self.n < 2:
            raise InvalidDomain("a TorusBox needs at least two axes")
        for lo, hi, pt in zip(self.lower, self.upper, self.torus_point):
            if not lo < hi:
                raise InvalidDomain("box intervals must have positive width")
            if not (lo < pt < hi):
                raise InvalidDomain("torus point must lie strictly inside the box")
            if not pt > 0:
                raise InvalidDomain("torus point must have positive coordinates")

    @property
    def widths(self) -> tuple[PerturbedRational, ...]:
        return tuple(hi - lo for lo, hi in zip(self.lower, self.upper))

    @property
    def in_first_orthant(self) -> bool:
        """True when every lower bound is positive (box inside the moment image)."""
        return all(lo > 0 for lo in self.lower)

    @classmethod
    def from_regime(cls, reg: "Regime") -> "TorusBox":
        """The box ``(1-eps,1) x (x-(2d+1)eps,x) x (S/2,S)^(n-2)`` with its torus."""
        eps, x, s = reg.eps, reg.x, reg.S
        wide = (2 * reg.d + 1) * eps
        lower = (1 - eps, x - wide) + (s / 2,) * (reg.n - 2)
        upper = (PerturbedRational.coerce(1), x) + (s,) * (reg.n - 2)
        point = (1 - eps / 2, x - wide / 2) + (3 * s / 4,) * (reg.n - 2)
        return cls(reg.n, lower, upper, point)


def ellipsoid_fits_box(ellipsoid: Ellipsoid, box: TorusBox) -> bool:
    """Whether the ellipsoid's moment simplex translates into the box.

    Operationally: each capacity must be strictly smaller than the box width
    on the same axis.

    Raises:
        DimensionMismatch: if the two domains have different half-dimension.
    """
    if ellipsoid.n != box.n:
        raise DimensionMismatch(
            f"ellipsoid has n={ellipsoid.n} but box has n={box.n}"
        )
    return all(cap < width for cap, width in zip(ellipsoid.capacities, box.widths))


@dataclass(frozen=True)
class Regime:
    """Full parameter pack for one obstruction run.

    Invariants enforced at construction (all exact comparisons):

    * ``2d+1 > slack_d * b`` with ``slack_d >= 2``;
    * ``S > slack_S * (d*a + b)`` with ``slack_S >= 4``;
    * ``(2d+1)*eps/2 < x``;
    * ``delta_2, ..., delta_n < delta_1 < eps/100`` and
      ``delta_1 < eps/(2d+1)``;
    * every ratio ``(eps-delta_i)/(eps-delta_j)``, ``i != j``, is generic;
    * ``d > (b-2)/(2-a)`` whenever ``a < 2``.
    """

    n: int
    x: PerturbedRational
    a: PerturbedRational
    b: PerturbedRational
    d: int
    eps: PerturbedRational
    deltas: tuple[PerturbedRational, ...]
    S: PerturbedRational
    slack_d: int = 2
    slack_S: int = 10
    slack_delta: int = 1000

    def __post_init__(self):
        for name in ("x", "a", "b", "eps", "S"):
            object.__setattr__(self, name, PerturbedRational.coerce(getattr(self, name)))
        object.__setattr__(self, "deltas", _coerce_all(self.deltas))
        self.validate()

    def validate(self) -> None:
        if self.n < 3:
            raise InvalidDomain("regime needs half-dimension n >= 3")
        if len(self.deltas) != self.n:
            raise InvalidDomain(f"expected {self.n} deltas, got {len(self.deltas)}")
        if self.slack_d < 2 or self.slack_S < 4 or self.slack_delta < _DELTA_SLACK_FLOOR:
            raise InvalidDomain("slack knobs below their minima")
        if self.d < 1:
            raise InvalidDomain("d must be a positive integer")
        two_d1 = 2 * self.d + 1
        if not two_d1 > self.b * self.slack_d:
            raise InvalidDomain(f"2d+1 = {two_d1} is not > slack_d*b = {self.b * self.slack_d}")
        budget = self.d * self.a + self.b
        if not self.S > budget * self.slack_S:
            raise InvalidDomain("S is not large enough relative to d*a + b")
        if not two_d1 * self.eps / 2 < self.x:
            raise InvalidDomain("(2d+1)*eps/2 must be < x")
        d1 = self.deltas[0]
        if not (0 < d1):
            raise InvalidDomain("delta_1 must be positive")
        if not d1 * _DELTA_SLACK_FLOOR < self.eps:
            raise InvalidDomain("delta_1 must be < eps/100")
        if not d1 * two_d1 < self.eps:
            raise InvalidDomain("delta_1 must be < eps/(2d+1)")
        for dj in self.deltas[1:]:
            if not (0 < dj < d1):
                raise InvalidDomain("each delta_j (j >= 2) must lie in (0, delta_1)")
        for i, di in enumerate(self.deltas):
            for j, dj in enumerate(self.deltas):
                if i != j and not ratio_is_generic(self.eps - di, self.eps - dj):
                    raise InvalidDomain(
                        f"(eps-delta_{i+1})/(eps-delta_{j+1}) is resonant"
                    )
        if self.a < 2 and not (2 - self.a) * self.d > self.b - 2:
            raise InvalidDomain("d must exceed (b-2)/(2-a)")

    # -- derived quantities --------------------------------------------------

    @property
    def two_d_plus_one(self) -> int:
        return 2 * self.d + 1

    @property
    def budget(self) -> PerturbedRational:
        """Total area available to the limit configuration: ``d*a + b``."""
        return self.d * self.a + self.b

    @property
    def torus_anchor(self) -> tuple[PerturbedRational, ...]:
        """Moment coordinates of the Lagrangian torus (the area anchor)."""
        wide = self.two_d_plus_one * self.eps
        return (1 - self.eps / 2, self.x - wide / 2) + (3 * self.S / 4,) * (self.n - 2)

    # -- serialization ---------------------------------------------------------

    def to_jsonable(self) -> dict:
        payload = {
            "n": self.n,
            "x": self.x.to_string(),
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "d": self.d,
            "eps": self.eps.to_string(),
            "S": self.S.to_string(),
            "slack_d": self.slack_d,
            "slack_S": self.slack_S,
            "slack_delta": self.slack_delta,
        }
        for i, delta in enumerate(self.deltas, start=1):
            payload[f"delta_{i}"] = delta.to_string()
        return payload

    @classmethod
    def from_jsonable(cls, payload: dict) -> "Regime":
        n = int(payload["n"])
        deltas = tuple(payload[f"delta_{i}"] for i in range(1, n + 1))
        return cls(
            n=n,
            x=payload["x"],
            a=payload["a"],
            b=payload["b"],
            d=int(payload["d"]),
            eps=payload["eps"],
            deltas=deltas,
            S=payload["S"],
            slack_d=int(payload.get("slack_d", 2)),
            slack_S=int(payload.get("slack_S", 10)),
            slack_delta=int(payload.get("slack_delta", 1000)),
        )


def _minimal_raw_d(a: PerturbedRational, b: PerturbedRational) -> int:
    d_raw = 1
    while d_raw < _MAX_D_SCAN:
        if 2 * d_raw + 1 > b and (not a < 2 or (2 - a) * d_raw > b - 2):
            return d_raw
        d_raw += 1
    raise NoRegime("no feasible d below the scan limit")


def select_regime(
    n: int,
    x: RationalLike,
    a: RationalLike,
    b: RationalLike,
    *,
    slack_d: int = 2,
    slack_S: int = 10,
    slack_delta: int = 1000,
    d: Optional[int] = None,
    eps: Optional[RationalLike] = None,
    S: Optional[RationalLike] = None,
    deltas: Optional[Sequence[RationalLike]] = None,
) -> Regime:
    """Construct the canonical regime for an instance ``(n, x, a, b)``.

    The construction is deterministic: ``d`` is the smallest raw value
    satisfying ``d > (b-2)/(2-a)`` and ``2d+1 > b``, scaled by ``slack_d``
    and then bumped until ``d > (b-1)/(2-a)`` (the exact form of "choose d
    large enough", which pins down the unique limit configuration); ``eps``
    is the midpoint rule ``(x + b - 1)/(2d+1)``; the deltas get distinct
    eta-coefficients so every genericity condition holds mechanically; ``S``
    is ``(slack_S + 1)`` times the area budget.

    Keyword overrides replace the corresponding rule; the result is always
    re-validated.

    Raises:
        NoRegime: if ``a >= 2`` or ``x <= 2`` (use the decision layer first),
            or if no valid ``d`` exists.
        DomainError: for inputs outside ``n >= 3``, ``1 <= a <= b``.
    """
    x = PerturbedRational.coerce(x)
    a = PerturbedRational.coerce(a)
    b = PerturbedRational.coerce(b)
    if n < 3:
        raise DomainError("select_regime needs n >= 3")
    if a < 1 or b < a:
        raise DomainError("capacities must satisfy 1 <= a <= b")
    if a >= 2 or x <= 2:
        raise NoRegime(
            "no obstruction regime for a >= 2 or x <= 2; reduce the instance first"
        )
    if slack_delta < 2 * _DELTA_SLACK_FLOOR:
        raise DomainError("slack_delta must be at least 200 for rule-built deltas")

    if d is None:
        d_val = slack_d * _minimal_raw_d(a, b)
        # The second clause is the exact analogue of "choose d large enough":
        # it makes every index-0 alternative carry negative area, so the
        # configuration the engine finds is unique.
        while not (2 * d_val + 1 > b * slack_d and (2 - a) * d_val > b - 1):
            d_val += 1
            if d_val > _MAX_D_SCAN:
                raise NoRegime("no feasible d below the scan limit")
    else:
        d_val = int(d)

    eps_val = PerturbedRational.coerce(eps) if eps is not None else (x + b - 1) / (2 * d_val + 1)

    if deltas is not None:
        delta_vals = _coerce_all(deltas)
    else:
        first = eps_val / slack_delta + ETA
        rest = tuple(eps_val / (2 * slack_delta) + j * ETA for j in range(2, n + 1))
        delta_vals = (first,) + rest

    s_val = (
        PerturbedRational.coerce(S)
        if S is not None
        else (d_val * a + b) * (slack_S + 1)
    )

    return Regime(
        n=n,
        x=x,
        a=a,
        b=b,
        d=d_val,
        eps=eps_val,
        deltas=delta_vals,
        S=s_val,
        slack_d=slack_d,
        slack_S=slack_S,
        slack_delta=slack_delta,
    )


def skinny_capacities(
    eps: RationalLike, deltas: Sequence[RationalLike], d: int
) -> tuple[PerturbedRational, ...]:
    """Capacities ``(eps-d1, (2d+1)(eps-d2), ..., (2d+1)(eps-dn))``."""
    eps = PerturbedRational.coerce(eps)
    deltas = _coerce_all(deltas)
    scale = 2 * d + 1
    return (eps - deltas[0],) + tuple(scale * (eps - dj) for dj in deltas[1:])


def skinny_ellipsoid(reg: Regime) -> Ellipsoid:
    """The very eccentric ellipsoid that embeds into the regime's box."""
    return Ellipsoid(skinny_capacities(reg.eps, reg.deltas, reg.d))
