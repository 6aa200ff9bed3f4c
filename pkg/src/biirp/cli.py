"""Command-line entry point: ``generate``, ``solve``, ``compare`` and ``hv``.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .archive import Dedup, nondominated_filter
from .encoding import GenotypeError, Representation, UnserviceableCustomer
from .experiments import ExperimentConfig, run_experiment
from .instance import GeneratorParams, InstanceFormatError, generate_instance, read_instance, write_instance
from .metrics import hypervolume_2d, reference_point
from .search import START_INITS, SearchConfig, run
from .selection import SelectionStrategy, Strategy

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(path)


def _load_instance(path: str):
    if not Path(path).is_file():
        raise DataError(f"instance file not found: {path}")
    try:
        return read_instance(path)
    except InstanceFormatError as exc:
        raise DataError(str(exc)) from None


def cmd_generate(args) -> int:
    params = GeneratorParams(
        side=args.side,
        consumption_low=args.consumption_low,
        consumption_high=args.consumption_high,
        inventory_factor=args.inventory_factor,
        capacity=args.capacity,
    )
    try:
        inst = generate_instance(args.seed, args.n, args.horizon, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_instance(inst, out)
    print(out)
    return 0


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    config = SearchConfig(
        representation=args.repr,
        strategy=SelectionStrategy(args.strategy, args.R),
        budget=args.budget,
        seed=args.seed,
        initial_random=args.initial_random,
        checkpoint_every=args.checkpoint_every,
        dedup=args.dedup,
        workers=args.workers,
        start_init=args.start_init,
    )
    try:
        archive, stats, trace = run(inst, config)
    except (GenotypeError, UnserviceableCustomer) as exc:
        raise DataError(str(exc)) from None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "front.csv", archive.to_csv())
    _write(out / "trace.csv", trace.to_csv())
    _write(out / "stats.json", json.dumps(stats.to_dict(), indent=2, sort_keys=True) + "\n")
    print(f"{len(archive)} solutions, ev={stats.ev}, iterations={stats.iterations} -> {out}")
    return 0


LIST_KEYS = {"instance", "gen_n", "repr", "strategy", "dedup", "seeds"}
INT_KEYS = {"gen_count", "gen_horizon", "gen_seed0", "R", "budget", "seeds", "gen_n", "initial_random", "checkpoints", "jobs"}


def read_config_file(path: str) -> dict:
    """``key = value`` lines; list values are whitespace separated; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not value.strip():
            raise UsageError(f"{path}: line {lineno}: expected key = value")
        vals = value.split()
        try:
            conv = [int(v) for v in vals] if key in INT_KEYS else vals
            if key == "k":
                conv = [float(v) for v in vals]
        except ValueError:
            raise UsageError(f"{path}: line {lineno}: bad value for {key}") from None
        out[key] = conv if key in LIST_KEYS else conv[0]
    return out


def cmd_compare(args) -> int:
    if args.budget is not None and args.k is not None:
        raise UsageError("--budget and --k are mutually exclusive")
    opts = {}
    if args.config:
        if not Path(args.config).is_file():
            raise DataError(f"config file not found: {args.config}")
        opts = read_config_file(args.config)
    for key, value in vars(args).items():
        if value is not None and key not in ("config", "func", "command"):
            opts[key] = value
    if "budget" in opts and "k" in opts:
        raise UsageError("budget and k are mutually exclusive")
    if "out" not in opts:
        raise UsageError("--out is required")
    for path in opts.get("instance", []):
        if not Path(path).is_file():
            raise DataError(f"instance file not found: {path}")
    try:
        cfg = ExperimentConfig(
            instance_paths=list(opts.get("instance", [])),
            gen_sizes=list(opts.get("gen_n", [])),
            gen_count=opts.get("gen_count", 1 if opts.get("gen_n") else 0),
            gen_horizon=opts.get("gen_horizon", 30),
            gen_seed0=opts.get("gen_seed0", 1),
            representations=list(opts.get("repr", ["freq", "dated"])),
            strategies=list(opts.get("strategy", ["refpoints"])),
            dedups=list(opts.get("dedup", ["objective"])),
            R=opts.get("R", 5),
            budget=opts.get("budget"),
            k=opts.get("k"),
            seeds=list(opts.get("seeds", [1])),
            initial_random=opts.get("initial_random", 10),
            start_init=opts.get("start_init", "stockout"),
            checkpoints=opts.get("checkpoints", 10),
            out_dir=str(opts["out"]),
            jobs=opts.get("jobs", 1),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        result = run_experiment(cfg)
    except InstanceFormatError as exc:
        raise DataError(str(exc)) from None
    for line in result.summary:
        print(line)
    print(f"{len(result.runs)} runs -> {cfg.out_dir}")
    return 0


def cmd_hv(args) -> int:
    path = Path(args.front)
    if not path.is_file():
        raise DataError(f"front file not found: {path}")
    try:
        with path.open(encoding="utf-8") as fh:
            points = [(float(r["z1"]), float(r["z2"])) for r in csv.DictReader(fh)]
    except (KeyError, ValueError) as exc:
        raise DataError(f"{path}: expected z1,z2 columns ({exc})") from None
    if not points:
        raise DataError(f"{path}: empty front")
    front = nondominated_filter(points)
    ref = tuple(args.ref) if args.ref else reference_point([front])
    print(repr(hypervolume_2d(front, ref)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="biirp", description="Biobjective inventory routing by archive-based local search.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a random instance file")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--horizon", type=int, default=30)
    g.add_argument("--out", required=True)
    d = GeneratorParams()
    g.add_argument("--side", type=float, default=d.side)
    g.add_argument("--consumption-low", type=float, default=d.consumption_low)
    g.add_argument("--consumption-high", type=float, default=d.consumption_high)
    g.add_argument("--inventory-factor", type=float, default=d.inventory_factor)
    g.add_argument("--capacity", type=float, default=d.capacity)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="run one local search")
    s.add_argument("--instance", required=True)
    s.add_argument("--repr", choices=[r.value for r in Representation], default="dated")
    s.add_argument("--strategy", choices=[v.value for v in Strategy], default="refpoints")
    s.add_argument("--R", type=int, default=5)
    s.add_argument("--budget", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--initial-random", type=int, default=10)
    s.add_argument("--checkpoint-every", type=int, default=0)
    s.add_argument("--dedup", choices=[v.value for v in Dedup], default="objective")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--start-init", choices=list(START_INITS), default="stockout")
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("compare", help="run a comparison experiment")
    c.add_argument("--config", help="key = value experiment file; flags override it")
    c.add_argument("--instance", action="append")
    c.add_argument("--gen-n", type=int, nargs="+")
    c.add_argument("--gen-count", type=int)
    c.add_argument("--gen-horizon", type=int)
    c.add_argument("--gen-seed0", type=int)
    c.add_argument("--repr", nargs="+", choices=[r.value for r in Representation])
    c.add_argument("--strategy", nargs="+", choices=[v.value for v in Strategy])
    c.add_argument("--dedup", nargs="+", choices=[v.value for v in Dedup])
    c.add_argument("--R", type=int)
    c.add_argument("--budget", type=int)
    c.add_argument("--k", type=float)
    c.add_argument("--seeds", type=int, nargs="+")
    c.add_argument("--initial-random", type=int)
    c.add_argument("--start-init", choices=list(START_INITS))
    c.add_argument("--checkpoints", type=int)
    c.add_argument("--jobs", type=int)
    c.add_argument("--out")
    c.set_defaults(func=cmd_compare)

    h = sub.add_parser("hv", help="hypervolume of a front CSV")
    h.add_argument("--front", required=True)
    h.add_argument("--ref", type=float, nargs=2, metavar=("Z1", "Z2"))
    h.set_defaults(func=cmd_hv)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"biirp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"biirp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"biirp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
