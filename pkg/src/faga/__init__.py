"""Hybrid firefly/genetic optimization toolkit."""
from .core import (Bounds, ConfigurationError, EvalCounter, Individual,
                   ProblemSpec, RngStream, TrialStats, aggregate_trials,
                   init_population, snap_to_kind, uniform_kinds)
from .penalty import PenaltyConfig, penalize, violation_sum
from .engines import (FireflyParams, GeneticParams, RunConfig, attractiveness,
                      blend_crossover, euclidean_distance, fa_run, faga_run,
                      firefly_move, ga_run, gaussian_mutate, tournament_select)
from .benchmarks import (BENCHMARK_BOUNDS, ackley, eval_benchmark,
                         make_benchmark, rastrigin, rosenbrock, sphere)
from .engineering import (ENGINEERING_PROBLEMS, cantilever_evaluate,
                          gear_train_brute_force, geartrain_evaluate,
                          ibeam_evaluate, spring_evaluate, vessel_evaluate)
from .knapsack import (BinaryParams, KnapsackInstance, MkpInstance, ParseError,
                       binarize, binary_faga_solve, bit_flip_mutation,
                       builtin_skp, dp_solve, list_builtin, mkp_fitness,
                       normalize_fitness, one_point_crossover, parse_orlib_mkp,
                       serialize_mkp, skp_fitness)
from .harness import (ExperimentPlan, ExperimentResult, emit_results,
                      make_binary_runner, make_continuous_runner,
                      read_results_csv, run_experiment)

__version__ = "1.0.0"
