"""Exact rational arithmetic extended by a formal positive infinitesimal.

A :class:`PerturbedRational` represents ``q + c*eta`` where ``q`` and ``c``
are exact rationals and ``eta`` is a formal positive infinitesimal.  All
parameters that must be "generic irrational" (capacity ratios, the small
perturbations of a skinny ellipsoid) are modeled this way: every comparison,
sign test and floor that the obstruction argument consumes is then decided
exactly, with no tolerances anywhere.

Arithmetic is first order in ``eta``; the ``eta**2`` term of a product is
dropped.  This loses nothing here because every downstream formula is affine
in the perturbations.  Callers must not multiply two values whose ``eta``
parts both carry information.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DegenerateValue, DivisionByZero

RationalLike = Union["PerturbedRational", Fraction, int, str]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class PerturbedRational:
    """Exact rational plus a signed formal infinitesimal: ``q + c*eta``.

    Ordering is lexicographic in ``(q, c)``, which is the order induced by
    letting ``eta`` be an arbitrarily small positive number.
    """

    q: Fraction
    c: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "q", _as_fraction(self.q))
        object.__setattr__(self, "c", _as_fraction(self.c))

    # -- construction ------------------------------------------------------

    @classmethod
    def coerce(cls, value: RationalLike) -> "PerturbedRational":
        if isinstance(value, PerturbedRational):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(_as_fraction(value))

    @classmethod
    def parse(cls, text: str) -> "PerturbedRational":
        """Parse the textual form ``p/q``, ``p/q~+``, ``p/q~-`` or ``p/q~c``.

        A bare ``+``/``-`` after the tilde means an eta-coefficient of
        ``+1``/``-1``; any other suffix is read as an exact rational
        coefficient (used when serializing values produced by arithmetic).
        """
        text = text.strip()
        if "~" in text:
            head, tail = text.split("~", 1)
            if tail == "+":
                coeff = Fraction(1)
            elif tail in ("-", "−"):
                coeff = Fraction(-1)
            else:
                coeff = Fraction(tail)
            return cls(Fraction(head), coeff)
        return cls(Fraction(text))

    # -- presentation ------------------------------------------------------

    def to_string(self) -> str:
        if self.c == 0:
            return str(self.q)
        if self.c == 1:
            return f"{self.q}~+"
        if self.c == -1:
            return f"{self.q}~-"
        return f"{self.q}~{self.c}"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"PerturbedRational({self.to_string()!r})"

    # -- queries -----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.c == 0

    @property
    def is_integral(self) -> bool:
        return self.c == 0 and self.q.denominator == 1

    def __bool__(self) -> bool:
        return self.q != 0 or self.c != 0

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: RationalLike) -> "PerturbedRational":
        other = PerturbedRational.coerce(other)
        return PerturbedRational(self.q + other.q, self.c + other.c)

    __radd__ = __add__

    def __neg__(self) -> "PerturbedRational":
        return PerturbedRational(-self.q, -self.c)

    def __sub__(self, other: RationalLike) -> "PerturbedRational":
        return self + (-PerturbedRational.coerce(other))

    def __rsub__(self, other: RationalLike) -> "PerturbedRational":
        return PerturbedRational.coerce(other) + (-self)

    def __mul__(self, other: RationalLike) -> "PerturbedRational":
        other = PerturbedRational.coerce(other)
        # First order in eta: the c1*c2 term is dropped.
        return PerturbedRational(self.q * other.q, self.q * other.c + self.c * other.q)

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike) -> "PerturbedRational":
        other = PerturbedRational.coerce(other)
        if other.q == 0:
            raise DivisionByZero(f"division by {other} (zero rational part)")
        # (A + B*eta) / (C + D*eta) = A/C + (B*C - A*D)/C^2 * eta
        return PerturbedRational(
            self.q / other.q,
            (self.c * other.q - self.q * other.c) / (other.q * other.q),
        )

    def __rtruediv__(self, other: RationalLike) -> "PerturbedRational":
        return PerturbedRational.coerce(other) / self

    def __abs__(self) -> "PerturbedRational":
        return -self if self < 0 else self

    # -- order -------------------------------------------------------------

    def _key(self):
        return (self.q, self.c)

    def _cmp(self, other: RationalLike) -> int:
        other = PerturbedRational.coerce(other)
        if self._key() == other._key():
            return 0
        return -1 if self._key() < other._key() else 1

    def __eq__(self, other) -> bool:
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __hash__(self):
        if self.c == 0:
            return hash(self.q)
        return hash((self.q, self.c))


ZERO = PerturbedRational(Fraction(0))
ONE = PerturbedRational(Fraction(1))
ETA = PerturbedRational(Fraction(0), Fraction(1))


def pr(q, c=0) -> PerturbedRational:
    """Shorthand constructor accepting ints, Fractions or 'p/q' strings."""
    return PerturbedRational(_as_fraction_or_parse(q), _as_fraction_or_parse(c))


def _as_fraction_or_parse(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value)
    return _as_fraction(value)


def floor_generic(value: RationalLike) -> int:
    """Floor of a generic perturbed rational.

    For a non-integral rational part this is the ordinary floor.  At an
    integer rational part the infinitesimal tag breaks the tie: ``n + eta``
    floors to ``n`` and ``n - eta`` floors to ``n - 1``.

    Raises:
        DegenerateValue: if the value is an exact untagged integer; that is
            a resonant parameter the caller must perturb.
    """
    value = PerturbedRational.coerce(value)
    if value.q.denominator != 1:
        return value.q.numerator // value.q.denominator
    if value.c > 0:
        return int(value.q)
    if value.c < 0:
        return int(value.q) - 1
    raise DegenerateValue(f"floor of exact integer {value.q} is resonant")


def ceil_generic(value: RationalLike) -> int:
    """Generic-safe ceiling, defined as ``-floor_generic(-v)``."""
    return -floor_generic(-PerturbedRational.coerce(value))


def ratio_is_generic(p: RationalLike, q: RationalLike) -> bool:
    """Decide whether ``p/q`` is generic in the sense of the floor calculus.

    The ratio is generic when it carries a nonzero eta-coefficient, or when
    its rational part is a non-integer (denominator > 1 in lowest terms).
    Exact integer ratios are resonant.

    Raises:
        DivisionByZero: when ``q`` has zero rational part.
    """
    ratio = PerturbedRational.coerce(p) / PerturbedRational.coerce(q)
    return ratio.c != 0 or ratio.q.denominator > 1
