"""Fairness axiom checkers for weighted seat assignments.

Lower-quota axioms ask that no party is left short of its quota:

* ``wlq_o``  - every party reaches the largest weight sum it could actually
  obtain below its quota with its deserved number of seats.
* ``wlq_1``  - a party short of its quota has *some* unheld seat that would
  bring it to quota.
* ``wlq_x``  - *every* unheld seat would bring it to quota.
* ``wlq_x_r`` - every seat held by an over-represented party would bring it
  to quota.

Upper-quota axioms bound over-representation: ``wuq_o`` caps each party at
its smallest reachable sum above quota, while ``wuq_1`` / ``wuq_x`` require
that removing some / any held seat drops an over-quota party strictly below
its quota. Envy axioms compare vote-normalised representations: ``wefx``
(``wef1``) requires that removing any (some) seat from the envied party's
bundle removes the envy, and ``wwef1`` also accepts a hypothetical transfer
of such a seat to the envious party.

Conventions, applied uniformly and exactly:

* a hypothetical added seat counts as reaching the quota on equality
  (``rep + w >= q``), while a removed seat must drop the party strictly
  below quota (``rep - w < q``);
* envy comparisons are weak (``>=`` removes envy);
* parties holding no seats are never envied (there is no seat to remove)
  but may themselves envy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .core import (
    ElectionInstance,
    SeatAssignment,
    obtainable_lower_quota,
    obtainable_upper_quota,
    quota,
    representation_vector,
    validate_assignment,
)

__all__ = [
    "ALL_AXIOMS",
    "ENVY_AXIOMS",
    "LOWER_QUOTA_AXIOMS",
    "UPPER_QUOTA_AXIOMS",
    "AxiomReport",
    "AxiomVerdict",
    "Violation",
    "check_all",
    "check_axiom",
    "check_envy",
    "check_lower_quota",
    "check_upper_quota",
    "delta_distance",
    "satisfies",
]

LOWER_QUOTA_AXIOMS = ("wlq_o", "wlq_1", "wlq_x", "wlq_x_r")
UPPER_QUOTA_AXIOMS = ("wuq_o", "wuq_1", "wuq_x")
ENVY_AXIOMS = ("wef1", "wefx", "wwef1")
ALL_AXIOMS = LOWER_QUOTA_AXIOMS + UPPER_QUOTA_AXIOMS + ENVY_AXIOMS


def _reaches(value: int | Fraction, target: Fraction) -> bool:
    # Weak crossing: landing exactly on the quota counts as reaching it.
    return value >= target


def _drops_below(value: int | Fraction, target: Fraction) -> bool:
    # Strict drop: removal must leave the party strictly below its quota.
    return value < target


@dataclass(frozen=True)
class Violation:
    """A single counterexample to an axiom.

    ``party`` is the aggrieved or over-represented party. ``seat`` names the
    witnessing seat where one exists, ``other`` the envied party for envy
    axioms. ``detail`` is a human-readable restatement of the failed
    inequality; the structured fields alone suffice to re-check it.
    """

    party: int
    seat: int | None = None
    other: int | None = None
    detail: str = ""


@dataclass(frozen=True)
class AxiomVerdict:
    """Outcome of one axiom on one assignment, with per-party margins.

    ``slack`` maps each party to its margin for the axiom family: distance to
    quota for quota axioms (representation minus quota for lower axioms,
    reversed for upper ones; the obtainable variants measure against the
    obtainable bound), and the worst envy margin for envy axioms. A
    non-negative slack means the party is unconditionally in the clear.
    """

    axiom: str
    satisfied: bool
    violations: tuple[Violation, ...]
    slack: Mapping[int, Fraction] = field(default_factory=dict)


class _InstanceContext:
    """Per-instance data shared across axiom checks (quotas, bounds)."""

    __slots__ = ("instance", "quotas", "_ell_o", "_u_o")

    def __init__(self, instance: ElectionInstance) -> None:
        self.instance = instance
        self.quotas = tuple(quota(instance, p) for p in instance.party_indices())
        self._ell_o: tuple[int, ...] | None = None
        self._u_o: tuple[int, ...] | None = None

    @property
    def ell_o(self) -> tuple[int, ...]:
        if self._ell_o is None:
            self._ell_o = tuple(
                obtainable_lower_quota(self.instance, p)
                for p in self.instance.party_indices()
            )
        return self._ell_o

    @property
    def u_o(self) -> tuple[int, ...]:
        if self._u_o is None:
            self._u_o = tuple(
                obtainable_upper_quota(self.instance, p)
                for p in self.instance.party_indices()
            )
        return self._u_o


@lru_cache(maxsize=2048)
def _context(instance: ElectionInstance) -> _InstanceContext:
    return _InstanceContext(instance)


def _lower_violations(
    ctx: _InstanceContext,
    seats: SeatAssignment,
    reps: Sequence[int],
    axiom: str,
    brief: bool,
) -> Iterator[Violation]:
    instance = ctx.instance
    weights = instance.weights
    k = instance.num_seats
    if axiom == "wlq_o":
        for p in instance.party_indices():
            bound = ctx.ell_o[p - 1]
            if reps[p - 1] < bound:
                yield Violation(
                    p,
                    detail="" if brief else (
                        f"representation {reps[p - 1]} is below the obtainable "
                        f"lower quota {bound}"
                    ),
                )
        return
    for p in instance.party_indices():
        rep = reps[p - 1]
        q = ctx.quotas[p - 1]
        if rep >= q:
            continue
        if axiom == "wlq_1":
            # The heaviest unheld seat is the easiest witness; a party below
            # quota never holds every seat, so one exists, and the smallest
            # unheld index is the heaviest because weights are non-increasing.
            best = min(t for t in range(1, k + 1) if seats[t - 1] != p)
            if not _reaches(rep + weights[best - 1], q):
                yield Violation(
                    p,
                    seat=best,
                    detail="" if brief else (
                        f"even the heaviest unheld seat {best} (weight "
                        f"{weights[best - 1]}) leaves {rep + weights[best - 1]} "
                        f"short of quota {q}"
                    ),
                )
            continue
        # wlq_x and wlq_x_r: scan candidate seats lightest first so that the
        # first failure found is the binding witness.
        for t in range(k, 0, -1):
            holder = seats[t - 1]
            if holder == p:
                continue
            if axiom == "wlq_x_r" and not ctx.quotas[holder - 1] < reps[holder - 1]:
                continue
            if not _reaches(rep + weights[t - 1], q):
                yield Violation(
                    p,
                    seat=t,
                    detail="" if brief else (
                        f"adding seat {t} (weight {weights[t - 1]}, held by party "
                        f"{holder}) leaves {rep + weights[t - 1]} short of quota {q}"
                    ),
                )
                break


def _upper_violations(
    ctx: _InstanceContext,
    seats: SeatAssignment,
    reps: Sequence[int],
    axiom: str,
    brief: bool,
) -> Iterator[Violation]:
    instance = ctx.instance
    weights = instance.weights
    k = instance.num_seats
    if axiom == "wuq_o":
        for p in instance.party_indices():
            bound = ctx.u_o[p - 1]
            if reps[p - 1] > bound:
                yield Violation(
                    p,
                    detail="" if brief else (
                        f"representation {reps[p - 1]} exceeds the obtainable "
                        f"upper quota {bound}"
                    ),
                )
        return
    for p in instance.party_indices():
        rep = reps[p - 1]
        q = ctx.quotas[p - 1]
        if rep <= q:
            continue
        held = [t for t in range(1, k + 1) if seats[t - 1] == p]
        if axiom == "wuq_1":
            # Removing the heaviest held seat drops representation the most.
            best = held[0]
            if not _drops_below(rep - weights[best - 1], q):
                yield Violation(
                    p,
                    seat=best,
                    detail="" if brief else (
                        f"removing even the heaviest held seat {best} (weight "
                        f"{weights[best - 1]}) leaves {rep - weights[best - 1]} "
                        f"at or above quota {q}"
                    ),
                )
        else:  # wuq_x: the lightest held seat is the binding removal.
            lightest = held[-1]
            if not _drops_below(rep - weights[lightest - 1], q):
                yield Violation(
                    p,
                    seat=lightest,
                    detail="" if brief else (
                        f"removing seat {lightest} (weight {weights[lightest - 1]}) "
                        f"leaves {rep - weights[lightest - 1]} at or above quota {q}"
                    ),
                )


def _envy_violations(
    ctx: _InstanceContext,
    seats: SeatAssignment,
    reps: Sequence[int],
    axiom: str,
    brief: bool,
) -> Iterator[Violation]:
    instance = ctx.instance
    weights = instance.weights
    votes = instance.votes
    k = instance.num_seats
    bundles: list[list[int]] = [[] for _ in instance.party_indices()]
    for t in range(1, k + 1):
        bundles[seats[t - 1] - 1].append(t)
    for px in instance.party_indices():
        mine = Fraction(reps[px - 1], votes[px - 1])
        for py in instance.party_indices():
            if px == py or not bundles[py - 1]:
                continue
            held = bundles[py - 1]
            vy = votes[py - 1]
            rep_y = reps[py - 1]
            # Seats are listed heaviest first, so held[0] is the heaviest of
            # the bundle (best removal or transfer) and held[-1] the lightest
            # (binding for "up to any").
            if axiom == "wefx":
                t = held[-1]
                if mine < Fraction(rep_y - weights[t - 1], vy):
                    yield Violation(
                        px,
                        seat=t,
                        other=py,
                        detail="" if brief else (
                            f"party {px} at {mine} still envies party {py} after "
                            f"removing its lightest seat {t} (weight "
                            f"{weights[t - 1]}): {Fraction(rep_y - weights[t - 1], vy)}"
                        ),
                    )
            elif axiom == "wef1":
                t = held[0]
                if mine < Fraction(rep_y - weights[t - 1], vy):
                    yield Violation(
                        px,
                        seat=t,
                        other=py,
                        detail="" if brief else (
                            f"party {px} at {mine} envies party {py} even after "
                            f"removing its heaviest seat {t} (weight "
                            f"{weights[t - 1]}): {Fraction(rep_y - weights[t - 1], vy)}"
                        ),
                    )
            else:  # wwef1: removal or transfer of the heaviest seat must help
                t = held[0]
                w = weights[t - 1]
                removal_ok = mine >= Fraction(rep_y - w, vy)
                transfer_ok = Fraction(reps[px - 1] + w, votes[px - 1]) >= Fraction(rep_y, vy)
                if not (removal_ok or transfer_ok):
                    yield Violation(
                        px,
                        seat=t,
                        other=py,
                        detail="" if brief else (
                            f"party {px} at {mine} envies party {py} at "
                            f"{Fraction(rep_y, vy)}, and seat {t} (weight {w}) "
                            f"neither removes the envy when taken from party {py} "
                            f"nor when granted to party {px}"
                        ),
                    )


def _violations(
    ctx: _InstanceContext,
    seats: SeatAssignment,
    reps: Sequence[int],
    axiom: str,
    brief: bool = False,
) -> Iterator[Violation]:
    if axiom in LOWER_QUOTA_AXIOMS:
        return _lower_violations(ctx, seats, reps, axiom, brief)
    if axiom in UPPER_QUOTA_AXIOMS:
        return _upper_violations(ctx, seats, reps, axiom, brief)
    if axiom in ENVY_AXIOMS:
        return _envy_violations(ctx, seats, reps, axiom, brief)
    raise ValueError(f"unknown axiom {axiom!r}; expected one of {ALL_AXIOMS}")


def _satisfied(
    ctx: _InstanceContext, seats: SeatAssignment, reps: Sequence[int], axiom: str
) -> bool:
    return next(_violations(ctx, seats, reps, axiom, brief=True), None) is None


def _quota_slack(
    ctx: _InstanceContext, reps: Sequence[int], axiom: str
) -> dict[int, Fraction]:
    if axiom == "wlq_o":
        return {
            p: Fraction(reps[p - 1] - ctx.ell_o[p - 1])
            for p in ctx.instance.party_indices()
        }
    if axiom == "wuq_o":
        return {
            p: Fraction(ctx.u_o[p - 1] - reps[p - 1])
            for p in ctx.instance.party_indices()
        }
    if axiom in LOWER_QUOTA_AXIOMS:
        return {
            p: reps[p - 1] - ctx.quotas[p - 1] for p in ctx.instance.party_indices()
        }
    return {p: ctx.quotas[p - 1] - reps[p - 1] for p in ctx.instance.party_indices()}


def _envy_slack(
    ctx: _InstanceContext, seats: SeatAssignment, reps: Sequence[int], axiom: str
) -> dict[int, Fraction]:
    instance = ctx.instance
    weights = instance.weights
    votes = instance.votes
    bundles: list[list[int]] = [[] for _ in instance.party_indices()]
    for t in range(1, instance.num_seats + 1):
        bundles[seats[t - 1] - 1].append(t)
    slack: dict[int, Fraction] = {}
    for px in instance.party_indices():
        mine = Fraction(reps[px - 1], votes[px - 1])
        margins: list[Fraction] = []
        for py in instance.party_indices():
            if px == py or not bundles[py - 1]:
                continue
            held = bundles[py - 1]
            vy = votes[py - 1]
            rep_y = reps[py - 1]
            pick = held[-1] if axiom == "wefx" else held[0]
            w = weights[pick - 1]
            margin = mine - Fraction(rep_y - w, vy)
            if axiom == "wwef1":
                transfer = Fraction(reps[px - 1] + w, votes[px - 1]) - Fraction(rep_y, vy)
                margin = max(margin, transfer)
            margins.append(margin)
        slack[px] = min(margins, default=Fraction(0))
    return slack


def _verdict(
    instance: ElectionInstance,
    assignment: Sequence[int],
    axiom: str,
    family: tuple[str, ...],
) -> AxiomVerdict:
    if axiom not in family:
        raise ValueError(f"unknown axiom {axiom!r}; expected one of {family}")
    seats = validate_assignment(instance, assignment)
    ctx = _context(instance)
    reps = representation_vector(instance, seats)
    violations = tuple(_violations(ctx, seats, reps, axiom))
    if axiom in ENVY_AXIOMS:
        slack = _envy_slack(ctx, seats, reps, axiom)
    else:
        slack = _quota_slack(ctx, reps, axiom)
    return AxiomVerdict(axiom, not violations, violations, slack)


def check_lower_quota(
    instance: ElectionInstance, assignment: Sequence[int], axiom: str
) -> AxiomVerdict:
    """Check one of the lower-quota axioms (see module docstring)."""
    return _verdict(instance, assignment, axiom, LOWER_QUOTA_AXIOMS)


def check_upper_quota(
    instance: ElectionInstance, assignment: Sequence[int], axiom: str
) -> AxiomVerdict:
    """Check one of the upper-quota axioms (see module docstring)."""
    return _verdict(instance, assignment, axiom, UPPER_QUOTA_AXIOMS)


def check_envy(
    instance: ElectionInstance, assignment: Sequence[int], axiom: str
) -> AxiomVerdict:
    """Check one of the envy-freeness axioms (see module docstring)."""
    return _verdict(instance, assignment, axiom, ENVY_AXIOMS)


def check_axiom(
    instance: ElectionInstance, assignment: Sequence[int], axiom: str
) -> AxiomVerdict:
    """Check any axiom by identifier."""
    return _verdict(instance, assignment, axiom, ALL_AXIOMS)


def satisfies(
    instance: ElectionInstance, assignment: Sequence[int], axiom: str
) -> bool:
    """Fast boolean form of :func:`check_axiom` (no witnesses, early exit)."""
    if axiom not in ALL_AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}; expected one of {ALL_AXIOMS}")
    seats = validate_assignment(instance, assignment)
    ctx = _context(instance)
    reps = representation_vector(instance, seats)
    return _satisfied(ctx, seats, reps, axiom)


def delta_distance(
    instance: ElectionInstance, assignment: Sequence[int]
) -> Fraction:
    """Average per-voter absolute deviation of representation from quota.

    Exactly zero iff every party meets its quota exactly.
    """
    seats = validate_assignment(instance, assignment)
    ctx = _context(instance)
    reps = representation_vector(instance, seats)
    total = sum(abs(reps[p - 1] - ctx.quotas[p - 1]) for p in instance.party_indices())
    return Fraction(total) / instance.total_votes


@dataclass(frozen=True)
class AxiomReport:
    """All axiom verdicts for one assignment plus its quota distance."""

    verdicts: Mapping[str, AxiomVerdict]
    delta: Fraction

    def satisfied(self) -> tuple[str, ...]:
        return tuple(a for a, v in self.verdicts.items() if v.satisfied)


def check_all(
    instance: ElectionInstance,
    assignment: Sequence[int],
    axioms: Sequence[str] = ALL_AXIOMS,
) -> AxiomReport:
    """Evaluate every requested axiom on one assignment."""
    verdicts = {axiom: check_axiom(instance, assignment, axiom) for axiom in axioms}
    return AxiomReport(verdicts, delta_distance(instance, assignment))
