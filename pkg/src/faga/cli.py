"""Command-line interface: solve, oracle, list, and export-data."""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import harness, knapsack
from .benchmarks import BENCHMARK_BOUNDS, make_benchmark
from .core import ConfigurationError
from .engineering import ENGINEERING_PROBLEMS
from .engines import FireflyParams, GeneticParams, RunConfig
from .knapsack import (BinaryParams, KnapsackInstance, ParseError, builtin_skp,
                       dp_solve, list_builtin, parse_orlib_mkp, serialize_mkp,
                       skp_as_mkp)
from .penalty import PenaltyConfig

# built-in defaults, overridable by config file, overridable by flags
DEFAULTS = {
    "algo": "faga",
    "trials": 30,
    "dim": 30,
    "pop": None,           # None -> 30 (benchmarks/knapsack) or 20 (engineering)
    "iters": 1000,
    "stagnation": None,
    "mutate_all_children": False,
    "alpha": 0.2,
    "beta0": 1.0,
    "gamma": 1.0,
    "crossover_rate": 0.8,
    "mixing_alpha": 0.5,
    "mutation_rate": 0.05,
    "sigma": None,
    "tournament_size": 3,
    "p_mut": 0.05,
    "theta": None,         # None -> 1e6 continuous, 10*max profit binary
    "seed": None,          # None -> FAGA_SEED env var -> 0
    "jobs": 1,
    "out": "results.csv",
    "json_out": None,
    "trace_out": None,
    "plot": None,
}


def _add_solve_flags(p: argparse.ArgumentParser) -> None:
    # every default stays None here so the file/flag precedence is detectable
    p.add_argument("--algo", choices=["fa", "ga", "faga", "binary"])
    p.add_argument("--trials", type=int)
    p.add_argument("--dim", type=int, help="benchmark dimension")
    p.add_argument("--pop", type=int, help="population size")
    p.add_argument("--iters", type=int, help="iteration budget")
    p.add_argument("--stagnation", type=int,
                   help="stop after this many non-improving iterations")
    p.add_argument("--mutate-all-children", action="store_const", const=True,
                   dest="mutate_all_children")
    p.add_argument("--alpha", type=float, help="firefly randomization weight")
    p.add_argument("--beta0", type=float, help="attractiveness at distance 0")
    p.add_argument("--gamma", type=float, help="light absorption coefficient")
    p.add_argument("--crossover-rate", type=float, dest="crossover_rate")
    p.add_argument("--mixing-alpha", type=float, dest="mixing_alpha")
    p.add_argument("--mutation-rate", type=float, dest="mutation_rate")
    p.add_argument("--sigma", type=float, help="mutation step size")
    p.add_argument("--tournament-size", type=int, dest="tournament_size")
    p.add_argument("--p-mut", type=float, dest="p_mut",
                   help="bit-flip probability (binary engine)")
    p.add_argument("--theta", type=float, help="penalty weight")
    p.add_argument("--jobs", type=int, help="thread workers for trials")
    p.add_argument("--out", help="summary CSV path")
    p.add_argument("--json-out", dest="json_out", help="JSON mirror path")
    p.add_argument("--trace-out", dest="trace_out",
                   help="per-iteration trace CSV path")
    p.add_argument("--plot", help="convergence figure path (png)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faga",
        description="Hybrid firefly/genetic optimization toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--problem", help="problem selector, e.g. sphere, "
                        "spring, skp:f3, mkp:FILE:INDEX")
    common.add_argument("--config", help="JSON config file (flags win)")
    common.add_argument("--seed", type=int)

    solve = sub.add_parser("solve", parents=[common],
                           help="run an experiment and write result files")
    _add_solve_flags(solve)

    sub.add_parser("oracle", parents=[common],
                   help="exact optimum of a knapsack instance")

    sub.add_parser("list", parents=[common], help="list built-in problems")

    export = sub.add_parser("export-data", parents=[common],
                            help="write built-in instances as text")
    export.add_argument("--out", help="output path (default stdout)")

    return parser


def _resolve(args: argparse.Namespace) -> dict:
    """flag > config file > built-in default."""
    file_cfg = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        unknown = set(file_cfg) - set(DEFAULTS) - {"problem"}
        if unknown:
            raise ConfigurationError(
                f"unknown config file keys: {sorted(unknown)}")
    cfg = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        cfg[key] = flag if flag is not None else file_cfg.get(key, default)
    cfg["problem"] = getattr(args, "problem", None) or file_cfg.get("problem")
    if cfg["seed"] is None:
        cfg["seed"] = int(os.environ.get("FAGA_SEED", "0"))
    return cfg


def _load_problem(selector, cfg):
    """Returns ('continuous', ProblemSpec) or ('binary', instance)."""
    if not selector:
        raise ConfigurationError("no problem selected (use --problem)")
    if selector in BENCHMARK_BOUNDS:
        return "continuous", make_benchmark(selector, int(cfg["dim"]))
    if selector in ENGINEERING_PROBLEMS:
        return "continuous", ENGINEERING_PROBLEMS[selector]()
    if selector.startswith("skp:"):
        return "binary", builtin_skp(selector[4:])
    if selector.startswith("mkp:"):
        rest = selector[4:]
        path, _, index = rest.rpartition(":")
        if not path:
            raise ConfigurationError(
                "mkp selector must be mkp:FILE:INDEX")
        try:
            with open(path) as fh:
                instances = parse_orlib_mkp(fh.read(), strict=True)
        except OSError as exc:
            raise ConfigurationError(f"cannot read {path}: {exc}") from exc
        try:
            inst = instances[int(index)]
        except (ValueError, IndexError):
            raise ConfigurationError(
                f"bad instance index {index!r} for {path} "
                f"({len(instances)} instances)") from None
        inst.id = f"{os.path.basename(path)}:{index}"
        return "binary", inst
    raise ConfigurationError(f"unknown problem: {selector!r}")


def _build_plan(cfg) -> harness.ExperimentPlan:
    kind, problem = _load_problem(cfg["problem"], cfg)
    algo = cfg["algo"]
    default_pop = 20 if (kind == "continuous"
                         and cfg["problem"] in ENGINEERING_PROBLEMS) else 30
    pop = int(cfg["pop"]) if cfg["pop"] is not None else default_pop
    run = RunConfig(population_size=pop, max_iterations=int(cfg["iters"]),
                    stagnation_window=cfg["stagnation"],
                    mutate_all_children=bool(cfg["mutate_all_children"]))
    fparams = FireflyParams(alpha=cfg["alpha"], beta0=cfg["beta0"],
                            gamma=cfg["gamma"])
    gparams = GeneticParams(crossover_rate=cfg["crossover_rate"],
                            mixing_alpha=cfg["mixing_alpha"],
                            mutation_rate=cfg["mutation_rate"],
                            sigma=cfg["sigma"],
                            tournament_size=int(cfg["tournament_size"]))
    if kind == "binary":
        if algo not in ("faga", "binary"):
            raise ConfigurationError(
                f"algorithm {algo!r} does not apply to knapsack problems")
        params = BinaryParams(p_mut=cfg["p_mut"], firefly=fparams,
                              genetic=gparams, run=run, theta=cfg["theta"])
        runner = harness.make_binary_runner(problem, params)
        name, sense = problem.id, "max"
    else:
        if algo == "binary":
            raise ConfigurationError(
                "the binary engine only applies to knapsack problems")
        theta = PenaltyConfig(cfg["theta"]) if cfg["theta"] is not None \
            else PenaltyConfig()
        runner = harness.make_continuous_runner(problem, algo, fparams,
                                                gparams, run, theta)
        name, sense = problem.name, problem.sense
    echoed = {k: cfg[k] for k in DEFAULTS if k not in
              ("out", "json_out", "trace_out", "plot", "jobs")}
    return harness.ExperimentPlan(name=name, algorithm=algo, runner=runner,
                                  trials=int(cfg["trials"]),
                                  seed=int(cfg["seed"]), sense=sense,
                                  config=echoed)


def cmd_solve(args) -> int:
    cfg = _resolve(args)
    plan = _build_plan(cfg)
    result = harness.run_experiment(plan, jobs=int(cfg["jobs"]))
    harness.emit_results([result], cfg["out"], cfg["json_out"],
                         cfg["trace_out"])
    if cfg["plot"]:
        from .plotting import plot_convergence
        plot_convergence([result], cfg["plot"])
    s = result.stats
    print(f"{plan.name} {plan.algorithm} best={s.best:g} mean={s.mean:g} "
          f"evals={s.avg_function_evals:g}")
    return 0


def cmd_oracle(args) -> int:
    cfg = _resolve(args)
    kind, problem = _load_problem(cfg["problem"], cfg)
    if kind != "binary" or not isinstance(problem, KnapsackInstance):
        raise ConfigurationError(
            "the oracle applies to single-constraint knapsack problems only")
    value, bits = dp_solve(problem)
    items = [str(i + 1) for i in np.flatnonzero(bits)]
    print(f"optimal={value:g}")
    print("items=" + ",".join(items))
    return 0


def cmd_list(args) -> int:
    for name, (lo, hi) in BENCHMARK_BOUNDS.items():
        print(f"{name}  benchmark  dim=any  bounds=[{lo:g},{hi:g}]  optimum=0")
    for name, factory in ENGINEERING_PROBLEMS.items():
        spec = factory()
        print(f"{name}  engineering  dim={spec.bounds.dimension}  "
              f"optimum={spec.known_optimum:g}")
    for iid in list_builtin():
        inst = builtin_skp(iid)
        note = "" if inst.data_consistent else "  (listing inconsistent)"
        print(f"skp:{iid}  knapsack  n={inst.n}  capacity={inst.capacity:g}  "
              f"optimum={inst.known_optimum:g}{note}")
    return 0


def cmd_export_data(args) -> int:
    cfg = _resolve(args)
    selector = cfg["problem"]
    if selector:
        if not selector.startswith("skp:"):
            raise ConfigurationError("export-data takes skp:fN selectors")
        ids = [selector[4:]]
    else:
        ids = list_builtin()
    text = serialize_mkp([skp_as_mkp(builtin_skp(i)) for i in ids])
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "solve": cmd_solve,
        "oracle": cmd_oracle,
        "list": cmd_list,
        "export-data": cmd_export_data,
    }[args.subcommand]
    try:
        return handler(args)
    except (ConfigurationError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
