"""The three continuous-space optimizers: firefly, genetic, and the hybrid."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (Bounds, ConfigurationError, EvalCounter, Individual,
                   ProblemSpec, RngStream, init_population, snap_to_kind)
from .penalty import PenaltyConfig, penalize


@dataclass
class FireflyParams:
    alpha: float = 0.2    # randomization weight
    beta0: float = 1.0    # attractiveness at zero distance
    gamma: float = 1.0    # light absorption coefficient

    def __post_init__(self):
        if self.alpha < 0 or self.beta0 <= 0 or self.gamma < 0:
            raise ConfigurationError("firefly parameters out of range")


@dataclass
class GeneticParams:
    crossover_rate: float = 0.8
    mixing_alpha: float = 0.5
    mutation_rate: float = 0.05
    sigma: Optional[float] = None   # None -> 0.1 * (ub - lb) per dimension
    tournament_size: int = 3

    def __post_init__(self):
        for r in (self.crossover_rate, self.mixing_alpha, self.mutation_rate):
            if not 0.0 <= r <= 1.0:
                raise ConfigurationError("rates must lie in [0, 1]")
        if self.sigma is not None and self.sigma < 0:
            raise ConfigurationError("sigma must be non-negative")
        if self.tournament_size < 1:
            raise ConfigurationError("tournament size must be >= 1")


@dataclass
class RunConfig:
    population_size: int = 20
    max_iterations: int = 1000
    stagnation_window: Optional[int] = None
    mutate_all_children: bool = False  # alternative reading: every kept child mutates

    def __post_init__(self):
        if self.population_size < 1:
            raise ConfigurationError("population size must be >= 1")
        if self.max_iterations < 0:
            raise ConfigurationError("max_iterations must be >= 0")


def euclidean_distance(xi: np.ndarray, xj: np.ndarray) -> float:
    xi = np.asarray(xi, dtype=float)
    xj = np.asarray(xj, dtype=float)
    if xi.shape != xj.shape:
        raise ConfigurationError("distance operands differ in length")
    return float(np.sqrt(np.sum((xi - xj) ** 2)))


def attractiveness(params: FireflyParams, r: float) -> float:
    return params.beta0 * math.exp(-params.gamma * r * r)


def firefly_move(xi: np.ndarray, xj: np.ndarray, params: FireflyParams,
                 rng: RngStream) -> np.ndarray:
    """One attraction step of i toward a brighter j, plus the random term."""
    xi = np.asarray(xi, dtype=float)
    xj = np.asarray(xj, dtype=float)
    beta = attractiveness(params, euclidean_distance(xi, xj))
    new = xi + beta * (xj - xi)
    if params.alpha > 0:
        new = new + params.alpha * (rng.random(xi.size) - 0.5)
    return new


def tournament_select(population: list[Individual], T: int, rng: RngStream,
                      sense: str = "min") -> Individual:
    """Best of T distinct uniformly drawn individuals; ties go to the lowest index."""
    if T > len(population):
        raise ConfigurationError("tournament size exceeds population size")
    idx = sorted(rng.choice_without_replacement(len(population), T))
    key = (lambda i: (population[i].penalized_fitness, i)) if sense == "min" \
        else (lambda i: (-population[i].penalized_fitness, i))
    return population[min(idx, key=key)]


def blend_crossover(p1: np.ndarray, p2: np.ndarray, mixing_alpha: float) -> np.ndarray:
    """Coordinate-wise blend: alpha*p1 + (1-alpha)*p2."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if p1.shape != p2.shape:
        raise ConfigurationError("crossover parents differ in length")
    return mixing_alpha * p1 + (1.0 - mixing_alpha) * p2


def gaussian_mutate(x: np.ndarray, sigma, rng: RngStream,
                    bounds: Optional[Bounds] = None) -> np.ndarray:
    """Independent N(0, sigma) perturbation per coordinate, clamped to bounds."""
    x = np.asarray(x, dtype=float)
    out = x + rng.normal(0.0, 1.0, x.size) * np.asarray(sigma, dtype=float)
    if bounds is not None:
        out = bounds.clamp(out)
    return out


class _Evaluator:
    """Caches the penalty wiring and counts objective invocations.

    Engines work on free latent positions; fitness is always computed on the
    snapped (bounds-clamped, kind-respecting) image, cached on the individual.
    Integer and discrete variables therefore keep fine-grained dynamics: small
    latent moves accumulate until they cross a snapping boundary, and only
    boundary crossings cost evaluations.
    """

    def __init__(self, problem: ProblemSpec, theta: PenaltyConfig):
        self.problem = problem
        self.theta = theta
        self.counter = EvalCounter(problem.objective)

    def snap(self, position: np.ndarray) -> np.ndarray:
        return snap_to_kind(self.problem.bounds.clamp(position),
                            self.problem.kinds)

    def move(self, ind: Individual, latent: np.ndarray) -> None:
        """Adopt a new latent position, re-evaluating only if the snapped
        image changed."""
        latent = self.problem.bounds.clamp(latent)
        snapped = self.snap(latent)
        ind.position = latent
        if ind.snapped is None or not np.array_equal(snapped, ind.snapped):
            ind.snapped = snapped
            self.evaluate(ind)

    def evaluate(self, ind: Individual) -> None:
        if ind.snapped is None:
            ind.snapped = self.snap(ind.position)
        x = ind.snapped
        raw = self.counter(x)
        g = [gi(x) for gi in self.problem.inequality]
        h = [hj(x) for hj in self.problem.equality]
        ind.fitness = raw
        ind.penalized_fitness = penalize(raw, g, h, self.theta, self.problem.sense)

    def finalize(self, ind: Individual) -> Individual:
        """Returned individuals expose the snapped position."""
        out = ind.copy()
        out.position = ind.snapped.copy()
        return out

    def better(self, a: float, b: float) -> bool:
        """Is penalized value a strictly better than b?"""
        return a > b if self.problem.sense == "max" else a < b


def _default_sigma(gparams: GeneticParams, bounds: Bounds):
    if gparams.sigma is not None:
        return gparams.sigma
    return 0.1 * (bounds.upper - bounds.lower)


def _fa_pass(pop: list[Individual], ev: _Evaluator, fparams: FireflyParams,
             rng: RngStream) -> None:
    """Full pairwise attraction sweep with immediate re-evaluation.

    A firefly that found nothing brighter takes a pure random step instead
    (the brightest individual wanders; elitism preserves the best-so-far).
    """
    bounds = ev.problem.bounds
    n = len(pop)
    for i in range(n):
        moved = False
        for j in range(n):
            if i == j:
                continue
            if ev.better(pop[j].penalized_fitness, pop[i].penalized_fitness):
                new = firefly_move(pop[i].position, pop[j].position, fparams, rng)
                ev.move(pop[i], new)
                moved = True
        if not moved and fparams.alpha > 0:
            new = pop[i].position + fparams.alpha * (rng.random(bounds.dimension) - 0.5)
            ev.move(pop[i], new)


def _worst_index(pop: list[Individual], ev: _Evaluator) -> int:
    key = lambda i: pop[i].penalized_fitness
    return max(range(len(pop)), key=key) if ev.problem.sense == "min" \
        else min(range(len(pop)), key=key)


def _best_index(pop: list[Individual], ev: _Evaluator) -> int:
    key = lambda i: pop[i].penalized_fitness
    return min(range(len(pop)), key=key) if ev.problem.sense == "min" \
        else max(range(len(pop)), key=key)


def _hybrid_loop(problem: ProblemSpec, fparams: FireflyParams,
                 gparams: Optional[GeneticParams], config: RunConfig,
                 theta: PenaltyConfig, rng: RngStream, use_ga: bool):
    """Shared engine: FA attraction pass, optional GA stage, elitism.

    With the GA stage disabled this is the plain firefly engine with
    elitism, so hybrid runs with zero crossover and mutation rates follow
    the identical trajectory.
    """
    ev = _Evaluator(problem, theta)
    pop = init_population(problem.bounds, config.population_size, rng)
    for ind in pop:
        ev.evaluate(ind)
    best = pop[_best_index(pop, ev)].copy()
    trace = [(0, best.penalized_fitness)]
    sigma = _default_sigma(gparams, problem.bounds) if gparams else None
    since_improvement = 0

    for it in range(1, config.max_iterations + 1):
        _fa_pass(pop, ev, fparams, rng)

        if use_ga and gparams and gparams.crossover_rate > 0:
            for _ in range(max(1, len(pop) // 2)):
                if rng.random() >= gparams.crossover_rate:
                    continue
                p1 = tournament_select(pop, gparams.tournament_size, rng, problem.sense)
                p2 = tournament_select(pop, gparams.tournament_size, rng, problem.sense)
                child = Individual(problem.bounds.clamp(
                    blend_crossover(p1.position, p2.position, gparams.mixing_alpha)))
                ev.evaluate(child)
                if not (ev.better(child.penalized_fitness, p1.penalized_fitness)
                        and ev.better(child.penalized_fitness, p2.penalized_fitness)):
                    continue
                mutate = config.mutate_all_children or (
                    gparams.mutation_rate > 0 and rng.random() < gparams.mutation_rate)
                if mutate:
                    ev.move(child, gaussian_mutate(child.position, sigma, rng,
                                                   problem.bounds))
                pop[_worst_index(pop, ev)] = child

        # elitism: the best-so-far individual survives into the next iteration
        cur_best = pop[_best_index(pop, ev)]
        if ev.better(cur_best.penalized_fitness, best.penalized_fitness):
            best = cur_best.copy()
            since_improvement = 0
        else:
            pop[_worst_index(pop, ev)] = best.copy()
            since_improvement += 1
        trace.append((it, best.penalized_fitness))

        if config.stagnation_window and since_improvement >= config.stagnation_window:
            break

    return ev.finalize(best), trace, ev.counter.count


def fa_run(problem: ProblemSpec, fparams: FireflyParams, config: RunConfig,
           theta: PenaltyConfig, rng: RngStream):
    """Firefly engine (with elitist best-so-far bookkeeping)."""
    return _hybrid_loop(problem, fparams, None, config, theta, rng, use_ga=False)


def faga_run(problem: ProblemSpec, fparams: FireflyParams, gparams: GeneticParams,
             config: RunConfig, theta: PenaltyConfig, rng: RngStream):
    """Hybrid engine: attraction pass plus selection/crossover/mutation."""
    return _hybrid_loop(problem, fparams, gparams, config, theta, rng, use_ga=True)


def ga_run(problem: ProblemSpec, gparams: GeneticParams, config: RunConfig,
           theta: PenaltyConfig, rng: RngStream):
    """Generational genetic engine with accept-if-improved population update."""
    if config.population_size < gparams.tournament_size:
        raise ConfigurationError("population smaller than tournament size")
    ev = _Evaluator(problem, theta)
    pop = init_population(problem.bounds, config.population_size, rng)
    for ind in pop:
        ev.evaluate(ind)
    best = pop[_best_index(pop, ev)].copy()
    trace = [(0, best.penalized_fitness)]
    sigma = _default_sigma(gparams, problem.bounds)
    since_improvement = 0

    for it in range(1, config.max_iterations + 1):
        new_pop = [ind.copy() for ind in pop]

        if gparams.crossover_rate > 0:
            for _ in range(max(1, len(pop) // 2)):
                if rng.random() >= gparams.crossover_rate:
                    continue
                i1 = _tournament_index(new_pop, gparams.tournament_size, rng, ev)
                i2 = _tournament_index(new_pop, gparams.tournament_size, rng, ev)
                p1, p2 = new_pop[i1], new_pop[i2]
                child = Individual(problem.bounds.clamp(
                    blend_crossover(p1.position, p2.position, gparams.mixing_alpha)))
                ev.evaluate(child)
                if (ev.better(child.penalized_fitness, p1.penalized_fitness)
                        and ev.better(child.penalized_fitness, p2.penalized_fitness)):
                    loser = i1 if ev.better(p2.penalized_fitness, p1.penalized_fitness) else i2
                    new_pop[loser] = child

        if gparams.mutation_rate > 0:
            for i in range(len(new_pop)):
                if rng.random() < gparams.mutation_rate:
                    mut = new_pop[i].copy()
                    ev.move(mut, gaussian_mutate(mut.position, sigma, rng,
                                                 problem.bounds))
                    new_pop[i] = mut

        new_best = new_pop[_best_index(new_pop, ev)]
        if ev.better(new_best.penalized_fitness,
                     pop[_best_index(pop, ev)].penalized_fitness):
            pop = new_pop
        if ev.better(new_best.penalized_fitness, best.penalized_fitness):
            best = new_best.copy()
            since_improvement = 0
        else:
            since_improvement += 1
        trace.append((it, best.penalized_fitness))
        if config.stagnation_window and since_improvement >= config.stagnation_window:
            break

    return ev.finalize(best), trace, ev.counter.count


def _tournament_index(pop: list[Individual], T: int, rng: RngStream,
                      ev: _Evaluator) -> int:
    if T > len(pop):
        raise ConfigurationError("tournament size exceeds population size")
    idx = sorted(rng.choice_without_replacement(len(pop), T))
    sense = ev.problem.sense
    key = (lambda i: (pop[i].penalized_fitness, i)) if sense == "min" \
        else (lambda i: (-pop[i].penalized_fitness, i))
    return min(idx, key=key)
