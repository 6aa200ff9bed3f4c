"""Front quality indicators for two minimised objectives."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .archive import ObjectiveVector, dominates


@dataclass(frozen=True)
class FrontMetrics:
    hypervolume: float
    epsilon: float
    size: int


def _as_points(front) -> list[tuple[float, float]]:
    return [(float(a), float(b)) for a, b in front]


def check_nondominated(front: Sequence) -> None:
    # in (z1, z2) order only earlier points can dominate later ones, and the
    # earliest point holding the running z2 minimum is the strongest candidate
    best = None
    for p in sorted(_as_points(front)):
        if best is not None and dominates(best, p):
            raise ValueError(f"front is not mutually non-dominated: {best} dominates {p}")
        if best is None or p[1] < best[1]:
            best = p


def hypervolume_2d(front: Sequence, ref) -> float:
    """Area dominated by ``front`` and bounded by ``ref`` (exact sweep over z1)."""
    check_nondominated(front)
    r1, r2 = float(ref[0]), float(ref[1])
    pts = sorted({p for p in _as_points(front) if p[0] < r1 and p[1] < r2})
    hv = 0.0
    for k, (z1, z2) in enumerate(pts):
        right = pts[k + 1][0] if k + 1 < len(pts) else r1
        hv += (right - z1) * (r2 - z2)
    return hv


def epsilon_additive(front_a: Sequence, front_b: Sequence) -> float:
    """Smallest ``eps >= 0`` such that every point of ``front_b`` shifted by ``+eps`` is weakly dominated by ``front_a``."""
    a = _as_points(front_a)
    b = _as_points(front_b)
    if not a or not b:
        raise ValueError("epsilon indicator needs two non-empty fronts")
    eps = max(min(max(x1 - y1, x2 - y2) for x1, x2 in a) for y1, y2 in b)
    return max(0.0, eps)


def reference_point(fronts: Iterable[Sequence], factor: float = 1.05) -> ObjectiveVector:
    """``factor`` times the componentwise maximum over the union of all fronts."""
    pts = [p for f in fronts for p in _as_points(f)]
    if not pts:
        raise ValueError("no points to derive a reference point from")
    return ObjectiveVector(factor * max(p[0] for p in pts), factor * max(p[1] for p in pts))


def front_metrics(front: Sequence, ref, baseline: Sequence) -> FrontMetrics:
    return FrontMetrics(hypervolume_2d(front, ref), epsilon_additive(front, baseline), len(front))
