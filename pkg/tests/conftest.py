"""Shared fixtures and independent oracles for the test suite.

The oracles deliberately avoid the code paths they check: rotation indices
are recomputed by counting integer crossings one by one, floors by the same
counting, and the cover bound by enumerating actual ramification profiles.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from polyobstruct import PerturbedRational, select_regime


def crossing_count(value: PerturbedRational) -> int:
    """Number of integers in the open interval ``(0, value)``, by iteration.

    For positive non-integral values this equals the floor; it never
    consults the floor implementation under test.
    """
    assert value > 0
    count = 0
    k = 1
    while True:
        point = PerturbedRational.coerce(k)
        if point < value:
            count += 1
            k += 1
        else:
            assert point != value, "oracle needs a generic value"
            return count


def rotation_index_oracle(angle: PerturbedRational) -> int:
    """Robbin-Salamon index of a rotation path: crossings counted directly."""
    return 2 * crossing_count(angle) + 1


def _partitions(n: int, max_part: int | None = None):
    if n == 0:
        yield ()
        return
    if max_part is None:
        max_part = n
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def ramification_profile_exists(p: int, s_tilde: int, s: int) -> bool:
    """Brute-force search for a puncture ramification profile.

    Picks one partition of ``p`` per target puncture, requires the total
    part count to be ``s``, and checks the Riemann-Hurwitz budget on the
    leftover ramification.
    """
    def search(puncture: int, parts_used: int) -> bool:
        if puncture == s_tilde:
            return parts_used == s and p * s_tilde - s <= 2 * p - 2
        if parts_used > s:
            return False
        for partition in _partitions(p):
            if search(puncture + 1, parts_used + len(partition)):
                return True
        return False

    return search(0, 0)


@pytest.fixture(scope="session")
def reference_regime():
    """The canonical obstructed instance (x=3, a=3/2, b=5/2, n=3)."""
    return select_regime(3, "3", "3/2", "5/2")


@pytest.fixture(scope="session")
def small_regime():
    """A small obstructed instance with d = 2."""
    return select_regime(3, "3", "3/2", "3/2")
