"""Archive-based multiobjective local search."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .archive import Dedup, EvaluatedSolution, ObjectiveVector, ParetoArchive
from .encoding import Genotype, Representation, max_feasible_period, max_feasible_start
from .evaluation import Evaluator, _evaluate_batch, _init_worker
from .instance import Instance
from .selection import SelectionStrategy, Strategy


START_INITS = ("stockout", "uniform")


@dataclass(frozen=True)
class SearchConfig:
    representation: Representation = Representation.DATED
    strategy: SelectionStrategy = field(default_factory=lambda: SelectionStrategy(Strategy.REFERENCE_POINTS, 5))
    budget: int = 10_000
    seed: int = 0
    initial_random: int = 10
    # snapshot the archive each time ev crosses a multiple of this (0: start and end only)
    checkpoint_every: int = 0
    dedup: Dedup = Dedup.OBJECTIVE
    workers: int = 1
    # starts of random initial dated genotypes: "stockout" (the frequency-only
    # start, so both representations begin from the same solutions) or "uniform"
    start_init: str = "stockout"

    def __post_init__(self):
        object.__setattr__(self, "representation", Representation(self.representation))
        object.__setattr__(self, "dedup", Dedup(self.dedup))
        if self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")
        if self.start_init not in START_INITS:
            raise ValueError(f"start_init must be one of {START_INITS}, got {self.start_init!r}")
        if self.initial_random < 0 or self.workers < 1 or self.checkpoint_every < 0:
            raise ValueError("initial_random and checkpoint_every must be >= 0, workers >= 1")


@dataclass
class SearchStats:
    ev: int = 0
    ev_init: int = 0
    iterations: int = 0
    # most neighbours a single iteration can evaluate: moves per customer * n * R
    neighbor_cap: int = 0
    archive_always_full: bool = True
    max_depth: int = 0
    stalled: bool = False

    @property
    def iteration_bound(self) -> float:
        """Post-initialisation evaluations divided by the per-iteration neighbour cap."""
        return (self.ev - self.ev_init) / self.neighbor_cap if self.neighbor_cap else 0.0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["iteration_bound"] = self.iteration_bound
        return out


@dataclass
class FrontTrace:
    snapshots: list[tuple[int, tuple[ObjectiveVector, ...]]] = field(default_factory=list)

    def record(self, ev: int, archive: ParetoArchive) -> None:
        if self.snapshots and self.snapshots[-1][0] == ev:
            return
        self.snapshots.append((ev, tuple(archive.objectives())))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["ev", "z1", "z2"])
        for ev, front in self.snapshots:
            for z1, z2 in front:
                w.writerow([ev, repr(z1), repr(z2)])
        return buf.getvalue()


def moves_per_customer(kind: Representation) -> int:
    return 4 if kind is Representation.DATED else 2


class Neighborhood:
    """All genotypes one unit step away in a single variable, clamped to feasibility."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self.pmax = [max_feasible_period(inst, i) for i in range(1, inst.n + 1)]
        self.smax = [max_feasible_start(inst, i) for i in range(1, inst.n + 1)]

    def __call__(self, g: Genotype) -> list[Genotype]:
        out = []
        periods = g.periods
        starts = g.starts
        for k in range(g.n):
            p = periods[k]
            for np_ in (p + 1, p - 1):
                if 1 <= np_ <= self.pmax[k]:
                    out.append(Genotype(g.kind, periods[:k] + (np_,) + periods[k + 1:], starts))
            if starts is None:
                continue
            s = starts[k]
            for ns in (s + 1, s - 1):
                if 1 <= ns <= self.smax[k]:
                    out.append(Genotype(g.kind, periods, starts[:k] + (ns,) + starts[k + 1:]))
        return out


def neighborhood(genotype: Genotype, inst: Instance) -> list[Genotype]:
    return Neighborhood(inst)(genotype)


def _rngs(seed: int):
    init_p, init_s, select = (np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(3))
    return init_p, init_s, select


def initial_genotypes(inst: Instance, config: SearchConfig) -> list[Genotype]:
    """All-min-period, all-max-period, then ``initial_random`` random genotypes.

    Periods and starts come from separate streams so both representations see
    the same random periods for a given seed. Random starts are only drawn with
    ``start_init="uniform"``; otherwise every dated genotype starts each
    customer on its stockout date.
    """
    kind = config.representation
    n, H = inst.n, inst.horizon
    pmax = [max_feasible_period(inst, i) for i in range(1, n + 1)]
    smax = [max_feasible_start(inst, i) for i in range(1, n + 1)]
    dated = kind is Representation.DATED
    s0 = tuple(min(max(c.stockout_date, 1), H) for c in inst.customers) if dated else None
    out = [Genotype(kind, (1,) * n, s0), Genotype(kind, tuple(pmax), s0)]
    rng_p, rng_s, _ = _rngs(config.seed)
    for _ in range(config.initial_random):
        periods = tuple(int(rng_p.integers(1, hi + 1)) for hi in pmax)
        if not dated:
            starts = None
        elif config.start_init == "uniform":
            starts = tuple(int(rng_s.integers(1, hi + 1)) for hi in smax)
        else:
            starts = s0
        out.append(Genotype(kind, periods, starts))
    return out


def initialize(inst: Instance, config: SearchConfig, evaluator: Evaluator | None = None):
    """Evaluate and archive the initial genotypes; returns ``(archive, evaluations used)``."""
    evaluator = evaluator or Evaluator(inst)
    archive = ParetoArchive(config.dedup)
    genotypes = initial_genotypes(inst, config)
    for g in genotypes:
        archive.insert(EvaluatedSolution(g, evaluator.evaluate(g)))
    return archive, len(genotypes)


def run(inst: Instance, config: SearchConfig, evaluator: Evaluator | None = None):
    """Run one search; returns ``(archive, stats, trace)``. Deterministic for a given seed."""
    evaluator = evaluator or Evaluator(inst)
    nbh = Neighborhood(inst)
    strategy = config.strategy
    _, _, rng = _rngs(config.seed)

    archive, ev = initialize(inst, config, evaluator)
    stats = SearchStats(
        ev=ev,
        ev_init=ev,
        neighbor_cap=moves_per_customer(config.representation) * inst.n * strategy.R,
    )
    trace = FrontTrace()
    trace.record(ev, archive)
    every = config.checkpoint_every
    next_mark = (ev // every + 1) * every if every else None

    pool = None
    if config.workers > 1:
        pool = ProcessPoolExecutor(config.workers, initializer=_init_worker, initargs=(inst,))
    try:
        while ev < config.budget:
            if len(archive) < strategy.R:
                stats.archive_always_full = False
            selected = strategy.select(archive.members, rng)
            batch = [(parent, g) for parent in selected for g in nbh(parent.genotype)]
            if not batch:
                stats.stalled = True
                break
            genotypes = [g for _, g in batch]
            if pool is None:
                values = [evaluator.evaluate(g) for g in genotypes]
            else:
                size = -(-len(genotypes) // config.workers)
                chunks = [genotypes[k:k + size] for k in range(0, len(genotypes), size)]
                values = [z for part in pool.map(_evaluate_batch, chunks) for z in part]
            ev += len(batch)
            # canonical order: selected solution, then neighbour
            for (parent, g), z in zip(batch, values):
                archive.insert(EvaluatedSolution(g, z, parent.depth + 1))
            stats.iterations += 1
            if next_mark is not None and ev >= next_mark:
                trace.record(ev, archive)
                next_mark = (ev // every + 1) * every
    finally:
        if pool is not None:
            pool.shutdown()

    stats.ev = ev
    stats.max_depth = max(m.depth for m in archive)
    assert stats.iterations * stats.neighbor_cap >= ev - stats.ev_init
    trace.record(ev, archive)
    return archive, stats, trace
