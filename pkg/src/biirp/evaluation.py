"""Objective evaluation of genotypes.

:class:`Evaluator` is the fast path used by the search. It memoises the decoded
deliveries and inventory levels of each ``(customer, period, start)`` triple,
which a one-variable neighbourhood move leaves untouched for all other
customers, and hands the dense quantity matrix to the compiled routing kernel.
Its results are bit-identical to ``evaluate_holding(decode(g))`` and
``evaluate_routing(decode(g))``.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .archive import ObjectiveVector
from .encoding import (
    Genotype,
    GenotypeError,
    Representation,
    decode,
    decode_customer,
    frequency_start,
    max_feasible_period,
    prestart_quantity,
)
from .instance import Instance, build_distance_matrix
from .inventory import STOCKOUT_TOL, StockoutError, customer_levels, evaluate_holding, holding_from_levels
from .routing import evaluate_routing


def evaluate(genotype: Genotype, inst: Instance, dmat: np.ndarray | None = None) -> ObjectiveVector:
    """Reference evaluation through the public decode / holding / routing functions."""
    if dmat is None:
        dmat = build_distance_matrix(inst)
    schedule = decode(genotype, inst)
    return ObjectiveVector(evaluate_holding(schedule, inst), evaluate_routing(schedule, inst, dmat))


class Evaluator:
    def __init__(self, inst: Instance, dmat: np.ndarray | None = None, cache_size: int = 200_000):
        self.inst = inst
        self.dmat = np.ascontiguousarray(build_distance_matrix(inst) if dmat is None else dmat, dtype=float)
        self.capacity = float(inst.capacity)
        self.cache_size = cache_size
        self._freq_starts = tuple(frequency_start(inst, i) for i in range(1, inst.n + 1))
        self._pmax = tuple(max_feasible_period(inst, i) for i in range(1, inst.n + 1))
        self._cache: dict[tuple[int, int, int], tuple[list[float], np.ndarray]] = {}

    def _column(self, i: int, p: int, s: int):
        key = (i, p, s)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        inst = self.inst
        c = inst.customers[i]
        H = inst.horizon
        if not 1 <= p <= self._pmax[i]:
            raise GenotypeError(f"customer {i + 1}: period {p} outside [1, {self._pmax[i]}]", customer=i + 1)
        if not 1 <= s <= H + 1:
            raise GenotypeError(f"customer {i + 1}: start {s} outside [1, {H}]", customer=i + 1)
        if c.stockout_date < s and prestart_quantity(inst, i + 1, s) > inst.capacity:
            raise GenotypeError(f"customer {i + 1}: start {s} needs a pre-start delivery above capacity",
                                customer=i + 1)
        dels = decode_customer(c.consumption, c.initial_inventory, p, s, H)
        levels = customer_levels(c.consumption, c.initial_inventory, dels, H)
        low = min(levels)
        if low < -STOCKOUT_TOL:
            raise StockoutError(i + 1, levels.index(low) + 1, low)
        col = np.zeros(H)
        for t, q in dels:
            col[t - 1] = q
        if len(self._cache) >= self.cache_size:
            self._cache.clear()
        self._cache[key] = (levels, col)
        return levels, col

    def evaluate(self, genotype: Genotype) -> ObjectiveVector:
        if genotype.n != self.inst.n:
            raise GenotypeError(f"genotype has {genotype.n} customers, instance has {self.inst.n}")
        starts = self._freq_starts if genotype.kind is Representation.FREQUENCY else genotype.starts
        cols = [self._column(i, p, s) for i, (p, s) in enumerate(zip(genotype.periods, starts))]
        z1 = holding_from_levels(levels for levels, _ in cols)
        qmat = np.stack([col for _, col in cols])
        z2 = float(_kernels.horizon_cost(qmat, self.dmat, self.capacity))
        return ObjectiveVector(z1, z2)

    __call__ = evaluate


_worker_evaluator: Evaluator | None = None


def _init_worker(inst: Instance) -> None:
    global _worker_evaluator
    _worker_evaluator = Evaluator(inst)


def _evaluate_batch(genotypes: list[Genotype]) -> list[ObjectiveVector]:
    return [_worker_evaluator.evaluate(g) for g in genotypes]
