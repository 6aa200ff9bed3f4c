"""Time genotype evaluation: the cached evaluator against the plain decode-then-cost path."""

import argparse
import time

import numpy as np

from biirp.encoding import Representation
from biirp.evaluation import Evaluator, evaluate
from biirp.instance import build_distance_matrix, generate_instance
from biirp.search import Neighborhood, SearchConfig, initial_genotypes


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--horizon", type=int, default=30)
    p.add_argument("--count", type=int, default=2000)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args()

    inst = generate_instance(args.seed, args.n, args.horizon)
    d = build_distance_matrix(inst)
    # neighbours of random genotypes resemble what the search evaluates
    base = initial_genotypes(inst, SearchConfig(Representation.DATED, initial_random=20, start_init="uniform"))
    nbh = Neighborhood(inst)
    pool = [g for b in base for g in nbh(b)]
    rng = np.random.default_rng(args.seed)
    sample = [pool[k] for k in rng.integers(len(pool), size=args.count)]

    ev = Evaluator(inst, d)
    ev.evaluate(sample[0])  # compile kernels outside the timing
    for name, fn in (("reference", lambda g: evaluate(g, inst, d)), ("evaluator", ev.evaluate)):
        t0 = time.perf_counter()
        for g in sample:
            fn(g)
        dt = time.perf_counter() - t0
        print(f"{name:9s} {1e6 * dt / len(sample):8.1f} us/evaluation")


if __name__ == "__main__":
    main()
