"""Exception types shared across the package."""

from __future__ import annotations


class PolyobstructError(Exception):
    """Base class for all package-specific errors."""


class DegenerateValue(PolyobstructError, ArithmeticError):
    """A floor/ceiling was requested at an exact integer with no infinitesimal tag.

    Such values are resonant: the caller's parameters violate the genericity
    assumptions and must be perturbed before the computation can proceed.
    """


class DivisionByZero(PolyobstructError, ZeroDivisionError):
    """Division by a value whose rational part is zero."""


class InvalidDomain(PolyobstructError, ValueError):
    """A toric domain violates its defining invariants."""


class NoRegime(PolyobstructError, ValueError):
    """No parameter regime exists for the requested instance."""


class DimensionMismatch(PolyobstructError, ValueError):
    """Operands live in ambient spaces of different half-dimension."""


class NonzeroM(PolyobstructError, ValueError):
    """A torus orbit class has a nonzero stabilized-direction winding
    where the operation requires it to vanish."""


class MalformedMatching(PolyobstructError, ValueError):
    """A holomorphic-building matching is structurally invalid."""


class PreconditionFailed(PolyobstructError, RuntimeError):
    """An operation's documented precondition does not hold."""


class FloorNotVanishing(PolyobstructError, ArithmeticError):
    """A floor term assumed to vanish by the simplified index formula is
    nonzero for the supplied regime."""


class BoundsTooSmall(PolyobstructError, ValueError):
    """Search bounds are smaller than what the area budget admits."""


class NotApplicable(PolyobstructError, ValueError):
    """A case reduction was requested outside its applicable range."""


class DomainError(PolyobstructError, ValueError):
    """Inputs lie outside the mathematical domain of the operation."""
