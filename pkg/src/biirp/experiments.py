"""Comparison experiments: representations, selection strategies and duplicate handling.

A comparison runs the cross product instances x representations x strategies x
dedup modes x seeds. Every arm of a given seed uses the same random streams, so
differences between arms come from the arm itself. Hypervolume reference points
are fixed per instance over the union of all fronts of that instance.
"""

from __future__ import annotations

import csv
import io
import os
import statistics
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .archive import Dedup, ObjectiveVector, nondominated_filter
from .encoding import Representation
from .instance import GeneratorParams, Instance, generate_instance, read_instance
from .metrics import epsilon_additive, hypervolume_2d, reference_point
from .search import SearchConfig, SearchStats, run
from .selection import SelectionStrategy, Strategy

METRICS_HEADER = ["run_id", "representation", "strategy", "seed", "ev_checkpoint", "hypervolume", "epsilon", "front_size"]


def normalized_budget(n: int, R: int, k: float) -> int:
    """Budget giving a constant ``ev / (4 n^2 R) = k``."""
    return int(round(4 * n * n * R * k))


@dataclass
class ExperimentConfig:
    instance_paths: list[str] = field(default_factory=list)
    # generated instances: one per (n, k) with seed gen_seed0 + k
    gen_sizes: list[int] = field(default_factory=list)
    gen_count: int = 0
    gen_horizon: int = 30
    gen_seed0: int = 1
    gen_params: GeneratorParams = field(default_factory=GeneratorParams)
    representations: list[Representation] = field(default_factory=lambda: [Representation.FREQUENCY, Representation.DATED])
    strategies: list[Strategy] = field(default_factory=lambda: [Strategy.REFERENCE_POINTS])
    dedups: list[Dedup] = field(default_factory=lambda: [Dedup.OBJECTIVE])
    R: int = 5
    budget: int | None = None
    k: float | None = None
    seeds: list[int] = field(default_factory=lambda: [1])
    initial_random: int = 10
    start_init: str = "stockout"
    checkpoints: int = 10
    out_dir: str | None = None
    jobs: int = 1

    def __post_init__(self):
        self.representations = [Representation(r) for r in self.representations]
        self.strategies = [Strategy(s) for s in self.strategies]
        self.dedups = [Dedup(d) for d in self.dedups]
        if (self.budget is None) == (self.k is None):
            raise ValueError("give exactly one of an absolute budget or the normalised factor k")
        if not (self.instance_paths or (self.gen_sizes and self.gen_count > 0)):
            raise ValueError("at least one instance is required")
        if not self.representations or not self.strategies or not self.dedups or not self.seeds:
            raise ValueError("need at least one representation, strategy, dedup mode and seed")

    def instances(self) -> list[Instance]:
        out = [read_instance(p) for p in self.instance_paths]
        for n in self.gen_sizes:
            for j in range(self.gen_count):
                out.append(generate_instance(self.gen_seed0 + j, n, self.gen_horizon, self.gen_params))
        return out

    def budget_for(self, inst: Instance) -> int:
        return self.budget if self.budget is not None else normalized_budget(inst.n, self.R, self.k)


@dataclass
class RunResult:
    run_id: str
    instance: str
    representation: Representation
    strategy: Strategy
    dedup: Dedup
    seed: int
    budget: int
    stats: SearchStats
    archive_csv: str
    trace_csv: str
    snapshots: list[tuple[int, tuple[ObjectiveVector, ...]]]

    @property
    def final_front(self) -> list[ObjectiveVector]:
        return nondominated_filter(self.snapshots[-1][1])


def run_id(inst: Instance, rep, strategy, dedup, seed) -> str:
    return f"{inst.name}__{rep}__{strategy}__{dedup}__s{seed}"


def _execute(args) -> RunResult:
    inst, rep, strategy, dedup, seed, cfg = args
    budget = cfg.budget_for(inst)
    every = max(1, budget // cfg.checkpoints) if cfg.checkpoints else 0
    sc = SearchConfig(
        representation=rep,
        strategy=SelectionStrategy(strategy, cfg.R),
        budget=budget,
        seed=seed,
        initial_random=cfg.initial_random,
        start_init=cfg.start_init,
        checkpoint_every=every,
        dedup=dedup,
    )
    archive, stats, trace = run(inst, sc)
    return RunResult(
        run_id(inst, rep, strategy, dedup, seed), inst.name, rep, Strategy(strategy), Dedup(dedup), seed,
        budget, stats, archive.to_csv(), trace.to_csv(), trace.snapshots,
    )


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


@dataclass
class ExperimentResult:
    runs: list[RunResult]
    references: dict[str, ObjectiveVector]
    metrics_rows: list[list]
    summary: list[str]

    def final_hypervolume(self, run: RunResult) -> float:
        return hypervolume_2d(run.final_front, self.references[run.instance])

    def metrics_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(METRICS_HEADER)
        w.writerows(self.metrics_rows)
        return buf.getvalue()


def _pair_summary(label, runs, key_fn, arm_fn, better, worse, hv) -> list[str]:
    """Lines counting, over matched pairs, how often arm ``better`` reaches at least arm ``worse``'s hypervolume."""
    groups = defaultdict(dict)
    for r in runs:
        groups[key_fn(r)][arm_fn(r)] = r
    lines = []
    wins = total = 0
    for key in sorted(groups, key=str):
        arms = groups[key]
        if better in arms and worse in arms:
            hb, hw = hv[arms[better].run_id], hv[arms[worse].run_id]
            total += 1
            wins += hb >= hw
    if total:
        lines.append(
            f"{label}: {better} >= {worse} hypervolume in {wins}/{total} pairs ({wins / total:.3f})"
        )
    return lines


def summarize(runs: list[RunResult], hv: dict[str, float]) -> list[str]:
    lines = []
    reps = {r.representation for r in runs}
    strategies = {r.strategy for r in runs}
    dedups = {r.dedup for r in runs}
    if {Representation.FREQUENCY, Representation.DATED} <= reps:
        for s in sorted(strategies, key=str):
            for d in sorted(dedups, key=str):
                sub = [r for r in runs if r.strategy is s and r.dedup is d]
                lines += _pair_summary(
                    f"representation strategy={s} dedup={d}", sub,
                    lambda r: (r.instance, r.seed), lambda r: r.representation,
                    Representation.DATED, Representation.FREQUENCY, hv,
                )
    if {Strategy.REFERENCE_POINTS, Strategy.CROWDING_RANDOM} <= strategies:
        for rep in sorted(reps, key=str):
            for d in sorted(dedups, key=str):
                sub = [r for r in runs if r.representation is rep and r.dedup is d]
                lines += _pair_summary(
                    f"selection representation={rep} dedup={d}", sub,
                    lambda r: (r.instance, r.seed), lambda r: r.strategy,
                    Strategy.CROWDING_RANDOM, Strategy.REFERENCE_POINTS, hv,
                )
                for s in (Strategy.REFERENCE_POINTS, Strategy.CROWDING_RANDOM):
                    vals = [hv[r.run_id] for r in sub if r.strategy is s]
                    if vals:
                        lines.append(
                            f"selection representation={rep} dedup={d} strategy={s}: "
                            f"mean hypervolume {statistics.fmean(vals)!r} over {len(vals)} runs"
                        )
    if {Dedup.OBJECTIVE, Dedup.DECISION} <= dedups:
        for rep in sorted(reps, key=str):
            for s in sorted(strategies, key=str):
                sub = [r for r in runs if r.representation is rep and r.strategy is s]
                lines += _pair_summary(
                    f"dedup representation={rep} strategy={s}", sub,
                    lambda r: (r.instance, r.seed), lambda r: r.dedup,
                    Dedup.OBJECTIVE, Dedup.DECISION, hv,
                )
    return lines


def analyze(runs: list[RunResult]) -> ExperimentResult:
    by_instance = defaultdict(list)
    for r in runs:
        by_instance[r.instance].append(r)
    refs = {}
    baselines = {}
    for name, group in by_instance.items():
        refs[name] = reference_point(front for r in group for _, front in r.snapshots)
        baselines[name] = nondominated_filter(p for r in group for p in r.final_front)

    rows = []
    hv_final = {}
    for r in runs:
        ref = refs[r.instance]
        for ev, front in r.snapshots:
            front = nondominated_filter(front)
            hv = hypervolume_2d(front, ref)
            eps = epsilon_additive(front, baselines[r.instance])
            rows.append([r.run_id, str(r.representation), str(r.strategy), r.seed, ev, repr(hv), repr(eps), len(front)])
        hv_final[r.run_id] = hypervolume_2d(r.final_front, ref)
    return ExperimentResult(runs, refs, rows, summarize(runs, hv_final))


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    tasks = []
    for inst in cfg.instances():
        for rep in cfg.representations:
            for strategy in cfg.strategies:
                for dedup in cfg.dedups:
                    for seed in cfg.seeds:
                        tasks.append((inst, rep, strategy, dedup, seed, cfg))
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            runs = list(pool.map(_execute, tasks))
    else:
        runs = [_execute(t) for t in tasks]
    result = analyze(runs)
    if cfg.out_dir is not None:
        write_experiment(result, Path(cfg.out_dir))
    return result


def write_experiment(result: ExperimentResult, out: Path) -> None:
    (out / "fronts").mkdir(parents=True, exist_ok=True)
    (out / "traces").mkdir(parents=True, exist_ok=True)
    for r in result.runs:
        _atomic_write(out / "fronts" / f"{r.run_id}.csv", r.archive_csv)
        _atomic_write(out / "traces" / f"{r.run_id}.csv", r.trace_csv)
    _atomic_write(out / "metrics.csv", result.metrics_csv())
    refs = "instance,z1,z2\n" + "".join(f"{k},{v.z1!r},{v.z2!r}\n" for k, v in sorted(result.references.items()))
    _atomic_write(out / "reference_points.csv", refs)
    _atomic_write(out / "summary.txt", "".join(line + "\n" for line in result.summary))
