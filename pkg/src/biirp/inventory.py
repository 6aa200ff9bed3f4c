"""Holding-cost objective by forward inventory simulation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import DeliverySchedule
from .instance import Instance

STOCKOUT_TOL = 1e-9


class StockoutError(ValueError):
    def __init__(self, customer: int, date: int, level: float):
        self.customer = customer
        self.date = date
        self.level = level
        super().__init__(f"stockout at customer {customer}, date {date} (level {level!r})")


@dataclass(frozen=True)
class InventoryTrace:
    """End-of-day levels; ``levels[i - 1, t]`` for dates ``t = 0..H`` (column 0 is the initial stock)."""

    levels: np.ndarray

    def min_level(self) -> float:
        return float(self.levels[:, 1:].min()) if self.levels.shape[1] > 1 else math.inf

    def holding(self) -> float:
        return math.fsum(self.levels[:, 1:].ravel().tolist())


def customer_levels(u: float, inv0: float, deliveries, H: int) -> list[float]:
    """End-of-day levels for dates ``1..H``: delivery arrives before the day's consumption."""
    q = [0.0] * (H + 1)
    for t, amount in deliveries:
        q[t] = amount
    levels = []
    level = inv0
    for t in range(1, H + 1):
        level = level + q[t] - u
        levels.append(level)
    return levels


def simulate_trace(schedule: DeliverySchedule, inst: Instance) -> InventoryTrace:
    H = inst.horizon
    out = np.empty((inst.n, H + 1))
    for row, (c, dels) in enumerate(zip(inst.customers, schedule.deliveries)):
        out[row, 0] = c.initial_inventory
        out[row, 1:] = customer_levels(c.consumption, c.initial_inventory, dels, H)
    return InventoryTrace(out)


def holding_from_levels(rows) -> float:
    """Sum of all levels, correctly rounded so the result does not depend on summation order."""
    return math.fsum(v for row in rows for v in row)


def evaluate_holding(schedule: DeliverySchedule, inst: Instance) -> float:
    H = inst.horizon
    rows = []
    for i, (c, dels) in enumerate(zip(inst.customers, schedule.deliveries), start=1):
        levels = customer_levels(c.consumption, c.initial_inventory, dels, H)
        for t, level in enumerate(levels, start=1):
            if level < -STOCKOUT_TOL:
                raise StockoutError(i, t, level)
        rows.append(levels)
    return holding_from_levels(rows)
