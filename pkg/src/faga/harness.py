"""Multi-trial experiment runner and delimited/JSON result emission."""
from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .core import ConfigurationError, RngStream, TrialStats, aggregate_trials
from .engines import (FireflyParams, GeneticParams, RunConfig, fa_run,
                      faga_run, ga_run)
from .knapsack import BinaryParams, binary_faga_solve
from .penalty import PenaltyConfig

# a runner maps one trial's random stream to (best value, trace, eval count)
Runner = Callable[[RngStream], tuple]

CSV_COLUMNS = ["problem", "algorithm", "trials", "best", "mean", "worst",
               "std_dev", "avg_fun_eval", "avg_time_s", "total_time_s"]


@dataclass
class ExperimentPlan:
    """One experiment: a named problem/algorithm pair run for several trials.

    Trial t draws its stream from seed + t, so any single trial can be
    reproduced in isolation.
    """

    name: str
    algorithm: str
    runner: Runner
    trials: int = 30
    seed: int = 0
    sense: str = "min"
    config: dict = field(default_factory=dict)   # echoed into the JSON output

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigurationError("trials must be >= 1")


@dataclass
class ExperimentResult:
    plan: ExperimentPlan
    stats: TrialStats


def _one_trial(plan: ExperimentPlan, t: int):
    rng = RngStream(plan.seed).split(t)
    start = time.perf_counter()
    best, trace, evals = plan.runner(rng)
    elapsed = time.perf_counter() - start
    return best, evals, elapsed, trace


def run_experiment(plan: ExperimentPlan, jobs: int = 1) -> ExperimentResult:
    """Run all trials (optionally across threads) and aggregate."""
    if jobs < 1:
        raise ConfigurationError("jobs must be >= 1")
    if jobs == 1:
        rows = [_one_trial(plan, t) for t in range(plan.trials)]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda t: _one_trial(plan, t),
                                 range(plan.trials)))
    bests, evals, times, traces = zip(*rows)
    stats = aggregate_trials(bests, evals, times, traces, plan.sense)
    return ExperimentResult(plan, stats)


def make_continuous_runner(problem, algorithm: str,
                           fparams: Optional[FireflyParams] = None,
                           gparams: Optional[GeneticParams] = None,
                           config: Optional[RunConfig] = None,
                           theta: Optional[PenaltyConfig] = None) -> Runner:
    """Adapt one of the continuous engines to the runner signature."""
    fparams = fparams or FireflyParams()
    gparams = gparams or GeneticParams()
    config = config or RunConfig()
    theta = theta or PenaltyConfig()

    def run(rng: RngStream):
        if algorithm == "fa":
            best, trace, evals = fa_run(problem, fparams, config, theta, rng)
        elif algorithm == "ga":
            best, trace, evals = ga_run(problem, gparams, config, theta, rng)
        elif algorithm == "faga":
            best, trace, evals = faga_run(problem, fparams, gparams, config,
                                          theta, rng)
        else:
            raise ConfigurationError(f"unknown algorithm: {algorithm!r}")
        return best.penalized_fitness, trace, evals

    return run


def make_binary_runner(instance, params: Optional[BinaryParams] = None) -> Runner:
    params = params or BinaryParams()

    def run(rng: RngStream):
        _, value, trace, evals = binary_faga_solve(instance, params, rng)
        return value, trace, evals

    return run


def _row(result: ExperimentResult) -> dict:
    s = result.stats
    return {
        "problem": result.plan.name,
        "algorithm": result.plan.algorithm,
        "trials": result.plan.trials,
        "best": s.best,
        "mean": s.mean,
        "worst": s.worst,
        "std_dev": s.std_dev,
        "avg_fun_eval": s.avg_function_evals,
        "avg_time_s": s.avg_time_s,
        "total_time_s": s.total_time_s,
    }


def emit_results(results: Sequence[ExperimentResult], csv_path,
                 json_path=None, trace_path=None) -> None:
    """Write the summary CSV, and optionally a JSON mirror and trace CSV.

    The JSON mirror carries the same rows plus each plan's config block; the
    trace file holds every trial's best-so-far curve as
    trial,iteration,best_fitness rows.
    """
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for result in results:
            writer.writerow(_row(result))

    if json_path is not None:
        payload = [dict(_row(r), seed=r.plan.seed, config=r.plan.config)
                   for r in results]
        with open(json_path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")

    if trace_path is not None:
        with open(trace_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["problem", "algorithm", "trial", "iteration",
                             "best_fitness"])
            for result in results:
                for t, trace in enumerate(result.stats.traces):
                    for iteration, value in trace:
                        writer.writerow([result.plan.name,
                                         result.plan.algorithm, t,
                                         iteration, value])


def read_results_csv(csv_path) -> list[dict]:
    """Load a summary CSV back into typed rows (inverse of emit_results)."""
    out = []
    with open(csv_path, newline="") as fh:
        for row in csv.DictReader(fh):
            typed = dict(row)
            typed["trials"] = int(row["trials"])
            for key in ("best", "mean", "worst", "std_dev", "avg_fun_eval",
                        "avg_time_s", "total_time_s"):
                typed[key] = float(row[key])
            out.append(typed)
    return out
