"""Run one of the three comparison studies on generated instances and write the results.

    python scripts/run_comparison.py representation --out results/repr
    python scripts/run_comparison.py selection --sizes 10 --count 5 --seeds 1 2 3
    python scripts/run_comparison.py dedup --k 5

Each study writes fronts/, traces/, metrics.csv, reference_points.csv and
summary.txt under --out, and prints the summary lines.
"""

import argparse
import time
from pathlib import Path

from biirp.experiments import ExperimentConfig, run_experiment

STUDIES = {
    # study -> (representations, strategies, dedup modes)
    "representation": (["freq", "dated"], ["refpoints"], ["objective"]),
    "selection": (["freq", "dated"], ["refpoints", "crowding"], ["objective"]),
    "dedup": (["dated"], ["refpoints"], ["objective", "decision"]),
}


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("study", choices=sorted(STUDIES))
    p.add_argument("--sizes", type=int, nargs="+", default=[10, 20])
    p.add_argument("--count", type=int, default=10, help="instances per size")
    p.add_argument("--horizon", type=int, default=30)
    p.add_argument("--seeds", type=int, nargs="+", default=[1, 2])
    p.add_argument("--R", type=int, default=5)
    p.add_argument("--k", type=float, default=10.0, help="budget factor, ev = 4 n^2 R k")
    p.add_argument("--start-init", choices=["stockout", "uniform"], default="stockout")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    args = p.parse_args()

    t0 = time.perf_counter()
    reps, strategies, dedups = STUDIES[args.study]
    out = Path(args.out or f"results/{args.study}")
    cfg = ExperimentConfig(
        gen_sizes=args.sizes, gen_count=args.count, gen_horizon=args.horizon,
        representations=reps, strategies=strategies, dedups=dedups,
        R=args.R, k=args.k, seeds=args.seeds, start_init=args.start_init, jobs=args.jobs, out_dir=str(out),
    )
    result = run_experiment(cfg)
    for line in result.summary:
        print(line)
    print(f"{len(result.runs)} runs in {time.perf_counter() - t0:.0f}s -> {out}")


if __name__ == "__main__":
    main()
