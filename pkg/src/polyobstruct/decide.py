"""Embedding decisions for stabilized polydiscs.

The stabilized verdict is the characterization: ``P(1,x) x R^(2n-4)`` embeds
into ``P(a,b) x R^(2n-4)`` (``n >= 3``) exactly when ``a >= 2`` or
``b >= x``.  The case reductions bring ``1 <= x <= 2`` instances into the
``x > 2`` range (or settle them by non-squeezing), the Hutchings window and
the product trick cover the four-dimensional question, and the obstruction
engine can replay the hard direction on request.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .domains import select_regime
from .errors import DegenerateValue, DomainError, NotApplicable
from .exactnum import PerturbedRational, RationalLike, ceil_generic

TraceStep = tuple[int, PerturbedRational]  # (case number, scaling parameter)


class Reason(str, Enum):
    A_GE_2 = "AGe2"
    B_GE_X = "BGeX"
    OBSTRUCTION = "Obstruction"
    NON_SQUEEZING = "NonSqueezing"
    HUTCHINGS_WINDOW = "HutchingsWindow"
    FOLDING_REGIME = "FoldingRegime"


@dataclass(frozen=True)
class Verdict:
    """Decision outcome; ``embeds is None`` means honestly unknown."""

    embeds: Optional[bool]
    reason: Reason
    reduction_trace: tuple[TraceStep, ...] = ()
    engine_margin: Optional[PerturbedRational] = None

    def to_jsonable(self) -> dict:
        payload = {
            "embeds": self.embeds,
            "reason": self.reason.value,
            "reduction_trace": [
                {"case": case, "scale": lam.to_string()}
                for case, lam in self.reduction_trace
            ],
        }
        if self.engine_margin is not None:
            payload["engine_margin"] = self.engine_margin.to_string()
        return payload


def decide_stabilized(
    x: RationalLike,
    a: RationalLike,
    b: RationalLike,
    n: int = 3,
    *,
    engine_check: bool = False,
) -> Verdict:
    """Verdict for ``P(1,x) x R^(2n-4)`` into ``P(a,b) x R^(2n-4)``.

    Embeds exactly when ``a >= 2`` or ``b >= x``.  With ``engine_check`` the
    obstructed ``x > 2`` verdicts are cross-checked by running the full
    configuration analysis; the exact negative margin is attached.

    Raises:
        DomainError: for ``a < 1``, ``b < a``, ``x < 1`` or ``n < 3``.
    """
    x = PerturbedRational.coerce(x)
    a = PerturbedRational.coerce(a)
    b = PerturbedRational.coerce(b)
    if n < 3:
        raise DomainError("the stabilized decision needs n >= 3")
    if x < 1:
        raise DomainError("x must be >= 1")
    if a < 1 or b < a:
        raise DomainError("capacities must satisfy 1 <= a <= b")
    if a >= 2:
        return Verdict(True, Reason.A_GE_2)
    if b >= x:
        return Verdict(True, Reason.B_GE_X)
    margin = None
    if engine_check and x > 2:
        from .moduli import contradiction_check

        report = contradiction_check(select_regime(n, x, a, b))
        if not report.contradiction:
            raise AssertionError("engine disagrees with the decision layer")
        margin = report.margin
    return Verdict(False, Reason.OBSTRUCTION, engine_margin=margin)


def nonsqueezing_obstruction(
    source_first_capacity: RationalLike, target_first_capacity: RationalLike
) -> bool:
    """True (obstructed) when the target's first capacity is strictly smaller."""
    return PerturbedRational.coerce(target_first_capacity) < PerturbedRational.coerce(
        source_first_capacity
    )


@dataclass(frozen=True)
class ReductionOutcome:
    """Result of a case reduction: a rescaled instance or a direct verdict."""

    trace: tuple[TraceStep, ...]
    reduced: Optional[tuple[PerturbedRational, PerturbedRational, PerturbedRational]] = None
    verdict: Optional[Verdict] = None


def _dyadic_in_window(lo: PerturbedRational, hi: PerturbedRational) -> PerturbedRational:
    """Coarsest dyadic rational strictly inside ``(lo, hi)``, deterministic."""
    for j in range(1, 65):
        step = Fraction(1, 2**j)
        floor_scaled = (lo.q * 2**j).numerator // (lo.q * 2**j).denominator
        candidate = PerturbedRational.coerce(Fraction(floor_scaled + 1, 2**j))
        while candidate <= lo:
            candidate = candidate + step
        if candidate < hi:
            return candidate
    raise DomainError("no dyadic scaling parameter fits the reduction window")


def reduce_to_big_x(
    x: RationalLike, a: RationalLike, b: RationalLike
) -> ReductionOutcome:
    """Reduce an ``x <= 2`` instance to ``x > 2`` or settle it directly.

    For ``a < x`` a single inclusion-plus-rescaling (case 1, scaling
    ``1/(1-lambda)`` with a dyadic ``lambda``) produces an equivalent
    instance with ``x' > 2`` and ``a' < 2``.  Targets with ``a < 1`` are
    rejected by non-squeezing (cases 3-5), and ``a >= x`` targets embed by
    inclusion (cases 2, 3 and 5 with scaling 1).  Replaying the recorded
    trace on the reduced verdict reproduces the original one.

    Raises:
        NotApplicable: when ``x > 2`` already.
        DomainError: for ``x < 1``, ``b < a`` or non-positive ``a``.
    """
    x = PerturbedRational.coerce(x)
    a = PerturbedRational.coerce(a)
    b = PerturbedRational.coerce(b)
    if x > 2:
        raise NotApplicable("instance already has x > 2")
    if x < 1 or not a > 0 or b < a:
        raise DomainError("need x >= 1 and 0 < a <= b")
    one = PerturbedRational.coerce(1)
    if a >= 2:
        return ReductionOutcome(trace=(), verdict=Verdict(True, Reason.A_GE_2))
    ratio = b / a
    if a < 1:
        # Gromov non-squeezing on the first factor settles every a < 1 target.
        case = 3 if ratio >= 2 else (5 if ratio >= x else 4)
        trace = ((case, a),)
        return ReductionOutcome(
            trace=trace,
            verdict=Verdict(False, Reason.NON_SQUEEZING, reduction_trace=trace),
        )
    if a < x:
        lam = _dyadic_in_window(1 - x / 2, 1 - a / 2)
        scale = one / (1 - lam)
        trace = ((1, lam),)
        return ReductionOutcome(trace=trace, reduced=(x * scale, a * scale, b * scale))
    # x <= a < 2, hence b >= a >= x: the inclusion embeds.
    case = 3 if ratio >= 2 else (5 if ratio >= x else 2)
    trace = ((case, one),)
    return ReductionOutcome(
        trace=trace,
        verdict=Verdict(True, Reason.B_GE_X, reduction_trace=trace),
    )


def replay_reduction(outcome: ReductionOutcome, reduced_verdict: Verdict) -> Verdict:
    """Pull a verdict on the reduced instance back to the original one."""
    if outcome.verdict is not None:
        return outcome.verdict
    return Verdict(
        embeds=reduced_verdict.embeds,
        reason=reduced_verdict.reason,
        reduction_trace=outcome.trace + reduced_verdict.reduction_trace,
        engine_margin=reduced_verdict.engine_margin,
    )


def hutchings_upper_bound(ratio: RationalLike) -> PerturbedRational:
    """Upper edge ``2r / (1 + (r-1)/(4*ceil(r)-1))`` of the Hutchings window.

    Always at least 2, with equality exactly at ratio 1.

    Raises:
        DegenerateValue: for a resonant (exact integer > 1) ratio.
    """
    r = PerturbedRational.coerce(ratio)
    if r < 1:
        raise DomainError("capacity ratio must be >= 1")
    if r == 1:
        return PerturbedRational.coerce(2)
    ceiling = ceil_generic(r)
    return 2 * r / (1 + (r - 1) / (4 * ceiling - 1))


def hutchings_admissible(x: RationalLike, a: RationalLike, b: RationalLike) -> bool:
    """Whether ``x`` lies in the four-dimensional Hutchings window for ``b/a``."""
    x = PerturbedRational.coerce(x)
    a = PerturbedRational.coerce(a)
    b = PerturbedRational.coerce(b)
    if x < 1 or a < 1 or b < a:
        raise DomainError("need x >= 1 and 1 <= a <= b")
    return x <= hutchings_upper_bound(b / a)


def decide_4d(x: RationalLike, a: RationalLike, b: RationalLike) -> Verdict:
    """Four-dimensional verdict for ``P(1,x)`` into ``P(a,b)``.

    Inclusion settles ``b >= x``; for ``a < 2`` the Hutchings window (small
    ``x``) and the stabilized product obstruction (``x >= 2``) tile the rest,
    since the window's upper edge is never below 2.  For ``a >= 2`` with
    ``b < x`` the answer is honestly unknown (symplectic folding regime).
    """
    x = PerturbedRational.coerce(x)
    a = PerturbedRational.coerce(a)
    b = PerturbedRational.coerce(b)
    if x < 1 or a < 1 or b < a:
        raise DomainError("need x >= 1 and 1 <= a <= b")
    if b >= x:
        return Verdict(True, Reason.B_GE_X)
    if a >= 2:
        return Verdict(None, Reason.FOLDING_REGIME)
    if hutchings_admissible(x, a, b):
        return Verdict(False, Reason.HUTCHINGS_WINDOW)
    return Verdict(False, Reason.OBSTRUCTION)


@dataclass(frozen=True)
class EmbeddingFunctionValue:
    """Value of the embedding function, or an interval when only bounds are known."""

    value: Optional[PerturbedRational] = None
    lower: Optional[PerturbedRational] = None
    reason: Optional[Reason] = None

    @property
    def known(self) -> bool:
        return self.value is not None

    def to_jsonable(self) -> dict:
        if self.value is not None:
            return {"value": self.value.to_string()}
        return {
            "lower": self.lower.to_string(),
            "upper": "unknown",
            "reason": self.reason.value,
        }


def embedding_function(x: RationalLike, a: RationalLike) -> EmbeddingFunctionValue:
    """The infimal ``b`` admitting ``P(1,x)`` into ``P(a,b)``.

    Equals ``x`` exactly for ``1 <= a < 2``.  For ``a >= 2`` only the
    trivial lower bound ``a`` is justified here; the rest is the symplectic
    folding regime and is reported as an open interval.
    """
    x = PerturbedRational.coerce(x)
    a = PerturbedRational.coerce(a)
    if x < 1 or a < 1:
        raise DomainError("need x >= 1 and a >= 1")
    if a < 2:
        return EmbeddingFunctionValue(value=x)
    return EmbeddingFunctionValue(lower=a, reason=Reason.FOLDING_REGIME)


def decide_polydisc_pair(
    source: tuple[RationalLike, RationalLike],
    target: tuple[RationalLike, RationalLike],
    n: int = 3,
) -> Verdict:
    """Stabilized verdict for arbitrary capacity pairs, normalized exactly.

    Sorts both pairs, rescales so the source is ``P(1, x)`` and delegates to
    :func:`decide_stabilized`; the decision is scale-equivariant so this is
    well defined.
    """
    r1, r2 = sorted(PerturbedRational.coerce(c) for c in source)
    t1, t2 = sorted(PerturbedRational.coerce(c) for c in target)
    if not r1 > 0:
        raise DomainError("source capacities must be positive")
    return decide_stabilized(r2 / r1, t1 / r1, t2 / r1, n)
