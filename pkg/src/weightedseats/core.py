"""Domain model for apportionment with weighted seats.

An election instance pairs a vote vector (one positive count per party) with a
non-increasing vector of positive seat weights. A seat assignment maps every
seat to a party, and a party's representation is the total weight of the seats
it holds. A party's quota is its proportional share of the total seat weight.

All quota arithmetic is exact: quotas are `fractions.Fraction` values, so every
comparison in the library reduces to integer cross-multiplication and boundary
cases never depend on floating point.

Parties and seats are both indexed 1-based in the public API, matching the way
apportionment examples are conventionally written.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Sequence

__all__ = [
    "DEFAULT_OMEGA_LIMIT",
    "ElectionInstance",
    "ReachableSet",
    "ResourceLimitError",
    "SeatAssignment",
    "lower_quota_seats",
    "obtainable_lower_quota",
    "obtainable_upper_quota",
    "quota",
    "reachable_weights",
    "representation",
    "representation_vector",
    "seats_of",
    "subset_achieving",
    "validate_assignment",
    "validate_instance",
]

#: Largest total seat weight for which reachable-set computations are
#: attempted; beyond it the pseudo-polynomial tables would grow without bound.
DEFAULT_OMEGA_LIMIT = 1_000_000

#: A complete seat assignment: entry ``t - 1`` is the party (1-based) holding
#: seat ``t``. Seats are always listed in non-increasing order of weight.
SeatAssignment = tuple[int, ...]


class ResourceLimitError(RuntimeError):
    """A computation would exceed its configured resource budget."""


@dataclass(frozen=True)
class ElectionInstance:
    """Votes per party plus the non-increasing vector of seat weights.

    The constructor enforces the invariants directly and rejects weight
    vectors that are not sorted; use :func:`validate_instance` to normalise
    raw input (it sorts the weights and records that it did so).
    """

    votes: tuple[int, ...]
    weights: tuple[int, ...]
    #: True when :func:`validate_instance` had to sort the supplied weights.
    reordered: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "votes", tuple(self.votes))
        object.__setattr__(self, "weights", tuple(self.weights))
        if not self.votes:
            raise ValueError("vote vector must not be empty")
        if not self.weights:
            raise ValueError("weight vector must not be empty")
        for p, v in enumerate(self.votes, 1):
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"party {p} must have a positive vote count, got {v!r}")
        for t, w in enumerate(self.weights, 1):
            if not isinstance(w, int) or w < 1:
                raise ValueError(f"seat {t} must have a positive weight, got {w!r}")
        for t in range(len(self.weights) - 1):
            if self.weights[t] < self.weights[t + 1]:
                raise ValueError(
                    f"weights must be non-increasing, but seat {t + 1} has weight "
                    f"{self.weights[t]} < {self.weights[t + 1]} of seat {t + 2}"
                )

    @property
    def num_parties(self) -> int:
        return len(self.votes)

    @property
    def num_seats(self) -> int:
        return len(self.weights)

    @property
    def total_votes(self) -> int:
        return sum(self.votes)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def party_indices(self) -> range:
        """1-based party indices."""
        return range(1, self.num_parties + 1)

    def seat_indices(self) -> range:
        """1-based seat indices, heaviest seat first."""
        return range(1, self.num_seats + 1)

    def is_unit_weight(self) -> bool:
        return self.weights[0] == self.weights[-1]


def validate_instance(
    raw_votes: Sequence[int], raw_weights: Sequence[int]
) -> ElectionInstance:
    """Normalise raw vote and weight vectors into an :class:`ElectionInstance`.

    Weights arriving out of order are sorted into non-increasing order and the
    ``reordered`` flag is set on the result. Empty vectors and non-positive
    entries are rejected with the offending index named.
    """
    votes = tuple(raw_votes)
    weights = tuple(raw_weights)
    if not votes:
        raise ValueError("vote vector must not be empty")
    if not weights:
        raise ValueError("weight vector must not be empty")
    for p, v in enumerate(votes, 1):
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"party {p} must have a positive vote count, got {v!r}")
    for t, w in enumerate(weights, 1):
        if not isinstance(w, int) or w < 1:
            raise ValueError(f"seat {t} must have a positive weight, got {w!r}")
    ordered = tuple(sorted(weights, reverse=True))
    return ElectionInstance(votes, ordered, reordered=ordered != weights)


def _check_party(instance: ElectionInstance, p: int) -> None:
    if not 1 <= p <= instance.num_parties:
        raise ValueError(
            f"party index {p} out of range 1..{instance.num_parties}"
        )


def validate_assignment(
    instance: ElectionInstance, seats: Sequence[int]
) -> SeatAssignment:
    """Check that ``seats`` is a complete assignment for ``instance``.

    Returns the assignment as a tuple. Every seat must name a valid party;
    full supply means any party may hold any number of seats.
    """
    assignment = tuple(seats)
    if len(assignment) != instance.num_seats:
        raise ValueError(
            f"assignment covers {len(assignment)} seats, expected {instance.num_seats}"
        )
    for t, p in enumerate(assignment, 1):
        if not isinstance(p, int) or not 1 <= p <= instance.num_parties:
            raise ValueError(f"seat {t} is assigned to invalid party {p!r}")
    return assignment


def quota(instance: ElectionInstance, p: int) -> Fraction:
    """Party ``p``'s proportional share of the total seat weight (exact)."""
    _check_party(instance, p)
    return Fraction(instance.total_weight * instance.votes[p - 1], instance.total_votes)


def seats_of(
    instance: ElectionInstance, assignment: Sequence[int], p: int
) -> tuple[int, ...]:
    """The (1-based) seats held by party ``p``, in increasing index order."""
    _check_party(instance, p)
    seats = validate_assignment(instance, assignment)
    return tuple(t for t, holder in enumerate(seats, 1) if holder == p)


def representation(
    instance: ElectionInstance, assignment: Sequence[int], p: int
) -> int:
    """Total weight of the seats assigned to party ``p``."""
    _check_party(instance, p)
    seats = validate_assignment(instance, assignment)
    return sum(w for w, holder in zip(instance.weights, seats) if holder == p)


def representation_vector(
    instance: ElectionInstance, assignment: Sequence[int]
) -> tuple[int, ...]:
    """Per-party representation under ``assignment``; sums to the total weight."""
    seats = validate_assignment(instance, assignment)
    reps = [0] * instance.num_parties
    for w, holder in zip(instance.weights, seats):
        reps[holder - 1] += w
    return tuple(reps)


def lower_quota_seats(instance: ElectionInstance, p: int) -> int:
    """The whole number of seats party ``p`` deserves by vote share."""
    _check_party(instance, p)
    return (instance.num_seats * instance.votes[p - 1]) // instance.total_votes


@dataclass(frozen=True)
class ReachableSet:
    """Weight sums realisable with at most ``cap`` seats of a weight vector.

    ``min_seats`` maps each achievable sum to the smallest number of seats
    that realises it. 0 (the empty seat set) is always achievable.
    """

    cap: int
    achievable: frozenset[int]
    min_seats: Mapping[int, int]

    def __contains__(self, value: int) -> bool:
        return value in self.achievable

    def largest_at_most(self, bound: int | Fraction) -> int:
        """Largest achievable sum that does not exceed ``bound``."""
        if bound < 0:
            raise ValueError(f"bound must be non-negative, got {bound}")
        return max(v for v in self.achievable if v <= bound)

    def smallest_at_least(self, bound: int | Fraction) -> int:
        """Smallest achievable sum that is at least ``bound``."""
        candidates = [v for v in self.achievable if v >= bound]
        if not candidates:
            raise ValueError(f"no achievable sum reaches {bound}")
        return min(candidates)


@lru_cache(maxsize=4096)
def _reachable_min_counts(weights: tuple[int, ...], cap: int) -> Mapping[int, int]:
    # Subset-sum DP over (value -> minimum cardinality), one pass per seat.
    # Each pass extends only states that existed before the seat was
    # considered, so no seat is ever used twice.
    best: dict[int, int] = {0: 0}
    for w in weights:
        for value, count in list(best.items()):
            if count < cap:
                reached = value + w
                if count + 1 < best.get(reached, cap + 1):
                    best[reached] = count + 1
    return MappingProxyType(best)


def reachable_weights(
    instance: ElectionInstance,
    h: int,
    *,
    omega_limit: int = DEFAULT_OMEGA_LIMIT,
) -> ReachableSet:
    """All weight sums party-obtainable from at most ``h`` seats.

    Runs the exact pseudo-polynomial subset-sum dynamic program; memory grows
    with the total weight, so instances beyond ``omega_limit`` are rejected
    with :class:`ResourceLimitError` instead of being silently truncated.
    """
    if not 0 <= h <= instance.num_seats:
        raise ValueError(f"cardinality cap {h} out of range 0..{instance.num_seats}")
    if instance.total_weight > omega_limit:
        raise ResourceLimitError(
            f"total weight {instance.total_weight} exceeds the configured "
            f"limit {omega_limit} for reachable-set computation"
        )
    counts = _reachable_min_counts(instance.weights, h)
    return ReachableSet(cap=h, achievable=frozenset(counts), min_seats=counts)


def obtainable_lower_quota(
    instance: ElectionInstance, p: int, *, omega_limit: int = DEFAULT_OMEGA_LIMIT
) -> int:
    """Largest weight sum below party ``p``'s quota that it can actually reach
    with the whole number of seats it deserves. 0 when it deserves no seat."""
    _check_party(instance, p)
    reachable = reachable_weights(
        instance, lower_quota_seats(instance, p), omega_limit=omega_limit
    )
    return reachable.largest_at_most(quota(instance, p))


def obtainable_upper_quota(
    instance: ElectionInstance, p: int, *, omega_limit: int = DEFAULT_OMEGA_LIMIT
) -> int:
    """Smallest reachable weight sum (any number of seats) at or above party
    ``p``'s quota. Always defined because the full seat set reaches the total
    weight."""
    _check_party(instance, p)
    reachable = reachable_weights(instance, instance.num_seats, omega_limit=omega_limit)
    return reachable.smallest_at_least(quota(instance, p))


def subset_achieving(
    instance: ElectionInstance,
    value: int,
    max_seats: int,
    *,
    omega_limit: int = DEFAULT_OMEGA_LIMIT,
) -> tuple[int, ...]:
    """A concrete set of seats (1-based indices) whose weights sum to ``value``
    using at most ``max_seats`` seats.

    Used to turn reachable-set facts into witness assignments. Raises
    ``ValueError`` when ``value`` is not reachable under the cap.
    """
    if not 0 <= max_seats <= instance.num_seats:
        raise ValueError(
            f"cardinality cap {max_seats} out of range 0..{instance.num_seats}"
        )
    if instance.total_weight > omega_limit:
        raise ResourceLimitError(
            f"total weight {instance.total_weight} exceeds the configured "
            f"limit {omega_limit} for subset reconstruction"
        )
    # Layered DP over (sum, cardinality) with one backpointer per state.
    layers: list[dict[tuple[int, int], tuple[int, int, bool]]] = []
    frontier: set[tuple[int, int]] = {(0, 0)}
    for w in instance.weights:
        layer: dict[tuple[int, int], tuple[int, int, bool]] = {}
        for total, count in frontier:
            layer.setdefault((total, count), (total, count, False))
            if count < max_seats:
                layer.setdefault((total + w, count + 1), (total, count, True))
        layers.append(layer)
        frontier = set(layer)
    counts = [count for total, count in frontier if total == value]
    if not counts:
        raise ValueError(
            f"weight sum {value} is not reachable with at most {max_seats} seats"
        )
    state = (value, min(counts))
    chosen: list[int] = []
    for t in range(instance.num_seats, 0, -1):
        total, count, took = layers[t - 1][state]
        if took:
            chosen.append(t)
        state = (total, count)
    return tuple(reversed(chosen))
