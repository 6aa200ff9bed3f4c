"""Pareto archive of evaluated solutions (both objectives minimised)."""

from __future__ import annotations

import bisect
import csv
import enum
import io
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .encoding import Genotype

DUPLICATE_TOL = 1e-9


class ObjectiveVector(NamedTuple):
    z1: float
    z2: float


@dataclass(frozen=True)
class EvaluatedSolution:
    genotype: Genotype
    objectives: ObjectiveVector
    # number of neighbourhood moves separating this solution from its initial ancestor
    depth: int = 0


class Outcome(str, enum.Enum):
    ADDED = "added"
    REJECTED_DOMINATED = "rejected_dominated"
    REJECTED_DUPLICATE = "rejected_duplicate"


@dataclass(frozen=True)
class InsertOutcome:
    status: Outcome
    removed: int = 0

    @property
    def added(self) -> bool:
        return self.status is Outcome.ADDED


class Dedup(str, enum.Enum):
    OBJECTIVE = "objective"
    DECISION = "decision"

    def __str__(self) -> str:
        return self.value


def dominates(a, b) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and (a[0] < b[0] or a[1] < b[1])


def same_objectives(a, b, tol: float = DUPLICATE_TOL) -> bool:
    return abs(a[0] - b[0]) <= tol and abs(a[1] - b[1]) <= tol


def decision_space_duplicate(a: Genotype, b: Genotype) -> bool:
    if a.kind != b.kind or a.n != b.n:
        raise ValueError("genotypes of different kind or size are not comparable")
    return a.periods == b.periods and a.starts == b.starts


class ParetoArchive:
    """Mutually non-dominated solutions, kept sorted by ``z1`` ascending.

    With ``dedup=OBJECTIVE`` candidates whose objectives match a member within
    ``DUPLICATE_TOL`` are rejected. With ``dedup=DECISION`` only genotype-equal
    candidates are rejected, so distinct genotypes with equal objectives may
    coexist; this mode exists for comparison experiments.
    """

    def __init__(self, dedup: Dedup | str = Dedup.OBJECTIVE):
        self.dedup = Dedup(dedup)
        self._members: list[EvaluatedSolution] = []
        self._z1: list[float] = []
        self._genotypes: set[Genotype] = set()

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self):
        return iter(self._members)

    @property
    def members(self) -> list[EvaluatedSolution]:
        return list(self._members)

    def objectives(self) -> list[ObjectiveVector]:
        return [m.objectives for m in self._members]

    def _has_objective_duplicate(self, z1: float, z2: float) -> bool:
        lo = bisect.bisect_left(self._z1, z1 - DUPLICATE_TOL)
        hi = bisect.bisect_right(self._z1, z1 + DUPLICATE_TOL)
        return any(abs(self._members[k].objectives[1] - z2) <= DUPLICATE_TOL for k in range(lo, hi))

    def insert(self, candidate: EvaluatedSolution) -> InsertOutcome:
        z1, z2 = candidate.objectives
        if self.dedup is Dedup.OBJECTIVE:
            if self._has_objective_duplicate(z1, z2):
                return InsertOutcome(Outcome.REJECTED_DUPLICATE)
        elif candidate.genotype in self._genotypes:
            return InsertOutcome(Outcome.REJECTED_DUPLICATE)

        # members with z1 <= candidate.z1; the last of them has the smallest z2
        right = bisect.bisect_right(self._z1, z1)
        if right > 0 and dominates(self._members[right - 1].objectives, candidate.objectives):
            return InsertOutcome(Outcome.REJECTED_DOMINATED)

        # dominated members form a contiguous block starting at the first z1 >= candidate.z1
        start = bisect.bisect_left(self._z1, z1)
        while start < len(self._members) and self._members[start].objectives == (z1, z2):
            start += 1
        stop = start
        while stop < len(self._members) and self._members[stop].objectives[1] >= z2:
            stop += 1
        removed = stop - start
        if removed:
            for m in self._members[start:stop]:
                self._genotypes.discard(m.genotype)
            del self._members[start:stop]
            del self._z1[start:stop]
        self._members.insert(start, candidate)
        self._z1.insert(start, z1)
        self._genotypes.add(candidate.genotype)
        return InsertOutcome(Outcome.ADDED, removed)

    def extend(self, candidates: Iterable[EvaluatedSolution]) -> list[InsertOutcome]:
        return [self.insert(c) for c in candidates]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["z1", "z2", "genotype"])
        for m in self._members:
            w.writerow([repr(m.objectives.z1), repr(m.objectives.z2), m.genotype.to_text()])
        return buf.getvalue()


def read_archive_csv(text: str) -> list[tuple[ObjectiveVector, Genotype]]:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [
        (ObjectiveVector(float(r["z1"]), float(r["z2"])), Genotype.from_text(r["genotype"]))
        for r in rows
    ]


def nondominated_filter(points: Iterable) -> list[ObjectiveVector]:
    """Non-dominated, exactly-deduplicated subset of ``points``, sorted by ``z1``."""
    front: list[ObjectiveVector] = []
    for z1, z2 in sorted(set(map(tuple, points))):
        if front and front[-1].z2 <= z2:
            continue
        front.append(ObjectiveVector(z1, z2))
    return front
