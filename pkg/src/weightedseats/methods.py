"""Seat assignment methods for weighted seats.

Two families are provided. Divisor methods hand out seats round by round,
heaviest seat first, to the party maximising ``votes / f(assigned, seat)``
where ``assigned`` accumulates either weight (weighted variants) or seat
counts (the classic variants kept for comparison). The greedy method instead
gives each seat to the party currently furthest below its quota, and the
largest remainder method allocates whole seat counts from quotas and
remainders.

Every method is deterministic: score ties are resolved by an explicit
:class:`TieBreak` policy, and each run records a full per-round trace.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .core import ElectionInstance, SeatAssignment, quota

__all__ = [
    "DIVISOR_FAMILIES",
    "INFINITE_SCORE",
    "METHOD_NAMES",
    "MethodTrace",
    "RoundRecord",
    "TieBreak",
    "assign",
    "classic_assign",
    "divisor_assign",
    "greedy_assign",
]

#: Marker score for parties whose divisor evaluates to zero; compares above
#: every exact Fraction score.
INFINITE_SCORE = math.inf

DIVISOR_FAMILIES = ("adams_w", "dhondt_w", "generic")
CLASSIC_METHODS = ("adams", "dhondt", "lrm")
#: Every method name accepted by :func:`assign` (and by the CLI).
METHOD_NAMES = ("adams_w", "dhondt_w", "generic", "greedy", "adams", "dhondt", "lrm")


class TieBreak(enum.Enum):
    """Deterministic total order used whenever method scores tie."""

    LOWEST_INDEX = "lowest-index"
    MOST_VOTES = "most-votes"

    def preference(self, instance: ElectionInstance, p: int) -> tuple[int, ...]:
        """Sort key: the preferred party in a tie has the smallest key."""
        if self is TieBreak.MOST_VOTES:
            return (-instance.votes[p - 1], p)
        return (p,)


@dataclass(frozen=True)
class RoundRecord:
    """One round of a sequential method.

    ``scores`` holds the per-party scores of the round (``INFINITE_SCORE``
    marks a zero divisor); it is ``None`` for the largest remainder method,
    which fixes seat counts up front rather than scoring rounds.
    """

    seat: int
    weight: int
    scores: tuple[Fraction | float, ...] | None
    chosen: int
    tied: bool


@dataclass(frozen=True)
class MethodTrace:
    method: str
    rounds: tuple[RoundRecord, ...]
    assignment: SeatAssignment


def _pick(
    instance: ElectionInstance,
    scores: list[Fraction | float],
    tiebreak: TieBreak,
) -> tuple[int, bool]:
    best = max(scores)
    tied = [p for p in instance.party_indices() if scores[p - 1] == best]
    chosen = min(tied, key=lambda p: tiebreak.preference(instance, p))
    return chosen, len(tied) > 1


def _run_rounds(
    instance: ElectionInstance,
    method: str,
    score_of: Callable[[int, int | Fraction, int], Fraction | float],
    gain: Callable[[int], int],
    tiebreak: TieBreak,
) -> tuple[SeatAssignment, MethodTrace]:
    """Shared round loop: ``score_of(votes, assigned, weight)`` scores a party,
    ``gain(weight)`` is what the winner accumulates (weight or one seat)."""
    assigned: list[int | Fraction] = [0] * instance.num_parties
    seats: list[int] = []
    rounds: list[RoundRecord] = []
    for t, w in enumerate(instance.weights, 1):
        scores = [
            score_of(instance.votes[p - 1], assigned[p - 1], w)
            for p in instance.party_indices()
        ]
        chosen, tied = _pick(instance, scores, tiebreak)
        assigned[chosen - 1] += gain(w)
        seats.append(chosen)
        rounds.append(RoundRecord(t, w, tuple(scores), chosen, tied))
    assignment = tuple(seats)
    return assignment, MethodTrace(method, tuple(rounds), assignment)


def divisor_assign(
    instance: ElectionInstance,
    family: str = "dhondt_w",
    *,
    offset: Fraction | int | None = None,
    tiebreak: TieBreak = TieBreak.LOWEST_INDEX,
) -> tuple[SeatAssignment, MethodTrace]:
    """Run a weighted divisor method.

    In round ``t`` party ``p`` scores ``votes_p / (assigned_p + c * weight_t)``
    with ``assigned_p`` the weight it already holds; a zero divisor scores as
    ``INFINITE_SCORE``. The offset ``c`` is 0 for ``adams_w``, 1 for
    ``dhondt_w``, and any non-negative rational for ``generic`` (0.5 gives a
    weighted Sainte-Lague variant, offered without fairness guarantees).
    """
    if family not in DIVISOR_FAMILIES:
        raise ValueError(f"unknown divisor family {family!r}; expected one of {DIVISOR_FAMILIES}")
    if family == "generic":
        if offset is None:
            raise ValueError("the generic divisor family requires an offset")
        offset = Fraction(offset)
        if offset < 0:
            raise ValueError(f"divisor offset must be non-negative, got {offset}")
    elif offset is not None:
        raise ValueError(f"family {family!r} does not take an offset")
    c: Fraction | int = {"adams_w": 0, "dhondt_w": 1}.get(family, offset)

    def score(votes: int, assigned: int | Fraction, w: int) -> Fraction | float:
        divisor = assigned + c * w
        if divisor == 0:
            return INFINITE_SCORE
        return Fraction(votes) / divisor

    name = family if family != "generic" else f"generic[{c}]"
    return _run_rounds(instance, name, score, lambda w: w, tiebreak)


def greedy_assign(
    instance: ElectionInstance,
    *,
    tiebreak: TieBreak = TieBreak.LOWEST_INDEX,
) -> tuple[SeatAssignment, MethodTrace]:
    """Give each seat, heaviest first, to the party furthest below its quota.

    With unit weights this reduces to the largest remainder method.
    """
    quotas = [quota(instance, p) for p in instance.party_indices()]
    assigned = [0] * instance.num_parties
    seats: list[int] = []
    rounds: list[RoundRecord] = []
    for t, w in enumerate(instance.weights, 1):
        scores: list[Fraction | float] = [
            quotas[p - 1] - assigned[p - 1] for p in instance.party_indices()
        ]
        chosen, tied = _pick(instance, scores, tiebreak)
        assigned[chosen - 1] += w
        seats.append(chosen)
        rounds.append(RoundRecord(t, w, tuple(scores), chosen, tied))
    assignment = tuple(seats)
    return assignment, MethodTrace("greedy", tuple(rounds), assignment)


def _largest_remainder(
    instance: ElectionInstance, tiebreak: TieBreak
) -> tuple[SeatAssignment, MethodTrace]:
    n = instance.total_votes
    k = instance.num_seats
    shares = [Fraction(k * v, n) for v in instance.votes]
    counts = [int(s) for s in shares]
    leftovers = k - sum(counts)
    by_remainder = sorted(
        instance.party_indices(),
        key=lambda p: (-(shares[p - 1] - counts[p - 1]),)
        + tiebreak.preference(instance, p),
    )
    for p in by_remainder[:leftovers]:
        counts[p - 1] += 1
    # Canonical seat mapping: seats in index order, party 1's count first.
    seats: list[int] = []
    for p in instance.party_indices():
        seats.extend([p] * counts[p - 1])
    assignment = tuple(seats)
    rounds = tuple(
        RoundRecord(t, w, None, assignment[t - 1], False)
        for t, w in enumerate(instance.weights, 1)
    )
    return assignment, MethodTrace("lrm", rounds, assignment)


def classic_assign(
    instance: ElectionInstance,
    method: str = "dhondt",
    *,
    tiebreak: TieBreak = TieBreak.LOWEST_INDEX,
) -> tuple[SeatAssignment, MethodTrace]:
    """Run a classic seat-count method on a weighted instance.

    Classic divisor scores ignore seat weights: Adams scores ``votes / count``
    (infinite while a party holds nothing) and D'Hondt ``votes / (count + 1)``.
    The largest remainder method fixes per-party seat counts and then claims
    seats in index order, party 1's count first; counts, not seat identities,
    are what these methods define, so the mapping is a declared convention.
    """
    if method == "lrm":
        return _largest_remainder(instance, tiebreak)
    if method == "adams":
        def score(votes: int, count: int | Fraction, w: int) -> Fraction | float:
            del w
            return INFINITE_SCORE if count == 0 else Fraction(votes, count)
    elif method == "dhondt":
        def score(votes: int, count: int | Fraction, w: int) -> Fraction:
            del w
            return Fraction(votes, count + 1)
    else:
        raise ValueError(f"unknown classic method {method!r}; expected one of {CLASSIC_METHODS}")
    return _run_rounds(instance, method, score, lambda w: 1, tiebreak)


def assign(
    instance: ElectionInstance,
    method: str,
    *,
    offset: Fraction | int | None = None,
    tiebreak: TieBreak = TieBreak.LOWEST_INDEX,
) -> tuple[SeatAssignment, MethodTrace]:
    """Dispatch on a method name; the single entry point used by the CLI."""
    if method in DIVISOR_FAMILIES:
        return divisor_assign(instance, method, offset=offset, tiebreak=tiebreak)
    if offset is not None:
        raise ValueError(f"method {method!r} does not take an offset")
    if method == "greedy":
        return greedy_assign(instance, tiebreak=tiebreak)
    if method in CLASSIC_METHODS:
        return classic_assign(instance, method, tiebreak=tiebreak)
    raise ValueError(f"unknown method {method!r}; expected one of {METHOD_NAMES}")
