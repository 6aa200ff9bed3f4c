"""Picking the R working solutions expanded in each search iteration."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .archive import EvaluatedSolution


class Strategy(str, enum.Enum):
    REFERENCE_POINTS = "refpoints"
    CROWDING_RANDOM = "crowding"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SelectionStrategy:
    kind: Strategy
    R: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Strategy(self.kind))
        if self.R < 1:
            raise ValueError(f"R must be >= 1, got {self.R}")

    def select(self, members: Sequence[EvaluatedSolution], rng: np.random.Generator) -> list[EvaluatedSolution]:
        if self.kind is Strategy.REFERENCE_POINTS:
            return select_reference_points(members, self.R)
        return select_crowding_random(members, self.R, rng)


def _require_members(members):
    members = list(members)
    if not members:
        raise ValueError("cannot select from an empty archive")
    return members


def normalized_objectives(members: Sequence[EvaluatedSolution]) -> list[tuple[float, float]]:
    """Objectives scaled to [0, 1] by the archive's own ranges; a flat objective maps to 0."""
    z = [m.objectives for m in members]
    out = [[0.0, 0.0] for _ in z]
    for k in range(2):
        lo = min(v[k] for v in z)
        hi = max(v[k] for v in z)
        if hi > lo:
            for row, v in zip(out, z):
                row[k] = (v[k] - lo) / (hi - lo)
    return [tuple(r) for r in out]


def reference_points(R: int) -> list[tuple[float, float]]:
    return [(k / (R + 1), 1 - k / (R + 1)) for k in range(1, R + 1)]


def select_reference_points(members, R: int) -> list[EvaluatedSolution]:
    """Closest member to each of R points spread along the normalised anti-diagonal.

    A member picked by several points is returned once, in order of first pick.
    Archives of at most R members are returned whole.
    """
    members = _require_members(members)
    if len(members) <= R:
        return list(members)
    norm = normalized_objectives(members)
    picked: list[int] = []
    for rx, ry in reference_points(R):
        best = min(
            range(len(members)),
            key=lambda k: (math.hypot(norm[k][0] - rx, norm[k][1] - ry), members[k].objectives),
        )
        if best not in picked:
            picked.append(best)
    return [members[k] for k in picked]


def crowding_distances(members: Sequence[EvaluatedSolution]) -> list[float]:
    """NSGA-II crowding distance of every member, treating the archive as one front."""
    n = len(members)
    dist = [0.0] * n
    if n == 0:
        return dist
    for k in range(2):
        vals = [m.objectives[k] for m in members]
        # secondary key makes ties order-independent
        order = sorted(range(n), key=lambda j: (vals[j], members[j].objectives[1 - k]))
        dist[order[0]] = math.inf
        dist[order[-1]] = math.inf
        span = vals[order[-1]] - vals[order[0]]
        if span == 0:
            continue
        for pos in range(1, n - 1):
            j = order[pos]
            dist[j] += (vals[order[pos + 1]] - vals[order[pos - 1]]) / span
    return dist


def select_crowding_random(members, R: int, rng: np.random.Generator) -> list[EvaluatedSolution]:
    """Boundary members first, then draws without replacement proportional to crowding distance."""
    members = _require_members(members)
    if len(members) <= R:
        return list(members)
    dist = crowding_distances(members)
    boundary = [k for k, v in enumerate(dist) if math.isinf(v)]
    chosen = boundary[:R]
    pool = [k for k, v in enumerate(dist) if not math.isinf(v)]
    while len(chosen) < R:
        weights = np.array([dist[k] for k in pool])
        total = weights.sum()
        if total > 0:
            pick = int(np.searchsorted(np.cumsum(weights), rng.random() * total, side="right"))
            pick = min(pick, len(pool) - 1)
            while weights[pick] == 0:  # never land on a zero-weight slot
                pick -= 1
        else:
            pick = int(rng.integers(len(pool)))
        chosen.append(pool.pop(pick))
    return [members[k] for k in chosen]
