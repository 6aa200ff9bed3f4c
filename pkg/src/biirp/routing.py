"""Routing objective: savings construction plus intra-route 2-Opt, summed over the horizon."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .encoding import DeliverySchedule
from .instance import Instance


class InfeasibleDemand(ValueError):
    pass


@dataclass(frozen=True)
class Route:
    stops: tuple[int, ...]
    load: float

    def cost(self, dmat: np.ndarray) -> float:
        return float(_kernels.route_cost(np.asarray(self.stops, dtype=np.int64), dmat))


@dataclass(frozen=True)
class DayPlan:
    date: int
    routes: tuple[Route, ...]
    cost: float


def _check_demands(customers_with_demand, Q):
    for i, q in customers_with_demand:
        if not 0 < q <= Q + _kernels.CAPACITY_TOL:
            raise InfeasibleDemand(f"customer {i}: quantity {q} not in (0, {Q}]")


def clarke_wright(customers_with_demand: Sequence[tuple[int, float]], dmat: np.ndarray, Q: float) -> list[Route]:
    """Parallel Clarke & Wright savings; ties go to the lexicographically smallest pair."""
    if not customers_with_demand:
        return []
    _check_demands(customers_with_demand, Q)
    items = sorted(customers_with_demand)
    qty_of = dict(items)
    nodes = np.array([i for i, _ in items], dtype=np.int64)
    qty = np.array([q for _, q in items], dtype=float)
    flat, offsets = _kernels.clarke_wright(nodes, qty, dmat, float(Q))
    routes = []
    for r in range(len(offsets) - 1):
        stops = tuple(int(v) for v in flat[offsets[r]:offsets[r + 1]])
        routes.append(Route(stops, sum(qty_of[s] for s in stops)))
    return routes


def two_opt(route: Route, dmat: np.ndarray) -> Route:
    stops = _kernels.two_opt(np.asarray(route.stops, dtype=np.int64), dmat)
    return Route(tuple(int(v) for v in stops), route.load)


def plan_day(date: int, customers_with_demand, dmat: np.ndarray, Q: float) -> DayPlan:
    routes = tuple(two_opt(r, dmat) for r in clarke_wright(customers_with_demand, dmat, Q))
    cost = 0.0
    for r in routes:
        cost += r.cost(dmat)
    return DayPlan(date, routes, cost)


def schedule_matrix(schedule: DeliverySchedule) -> np.ndarray:
    """Dense ``(n, H)`` quantity matrix, column ``t - 1`` for date ``t``."""
    q = np.zeros((schedule.n, schedule.horizon))
    for row, dels in enumerate(schedule.deliveries):
        for t, amount in dels:
            q[row, t - 1] = amount
    return q


def evaluate_routing(schedule: DeliverySchedule, inst: Instance, dmat: np.ndarray) -> float:
    for i, dels in enumerate(schedule.deliveries, start=1):
        _check_demands([(i, q) for _, q in dels], inst.capacity)
    return float(_kernels.horizon_cost(schedule_matrix(schedule), dmat, float(inst.capacity)))


def day_plans(schedule: DeliverySchedule, inst: Instance, dmat: np.ndarray) -> list[DayPlan]:
    """Route plans for every date; inspection counterpart of :func:`evaluate_routing`."""
    return [
        plan_day(t, todays, dmat, inst.capacity)
        for t, todays in enumerate(schedule.by_date(), start=1)
    ]
