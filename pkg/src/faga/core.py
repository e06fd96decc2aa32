"""Problem abstraction, population setup, seeded RNG, and trial statistics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np


class ConfigurationError(ValueError):
    """Raised for malformed problem or run configuration."""


Kind = object  # "continuous" | "integer" | "binary" | sequence of allowed reals


@dataclass
class Bounds:
    """Per-dimension box bounds."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        self.lower = np.asarray(self.lower, dtype=float)
        self.upper = np.asarray(self.upper, dtype=float)
        if self.lower.ndim != 1 or self.lower.shape != self.upper.shape:
            raise ConfigurationError("lower and upper must be 1-d and equal length")
        if np.any(self.lower > self.upper):
            raise ConfigurationError("lower bound exceeds upper bound")

    @property
    def dimension(self) -> int:
        return self.lower.size

    def clamp(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)


def uniform_kinds(kind: Kind, dimension: int) -> list:
    """All dimensions share one kind."""
    return [kind] * dimension


def snap_to_kind(position: np.ndarray, kinds: Sequence[Kind],
                 bounds: Optional[Bounds] = None) -> np.ndarray:
    """Map a free real vector onto the per-dimension variable domains.

    Continuous entries pass through, integer entries round to nearest,
    discrete-set entries snap to the nearest allowed value (ties toward the
    smaller one), binary entries threshold at 0.5. Idempotent.
    """
    position = np.asarray(position, dtype=float)
    if len(kinds) != position.size:
        raise ConfigurationError("kinds length does not match position length")
    out = position.copy()
    for k, kind in enumerate(kinds):
        if kind == "continuous":
            continue
        if kind == "integer":
            out[k] = round(position[k])
        elif kind == "binary":
            out[k] = 1.0 if position[k] >= 0.5 else 0.0
        else:  # discrete set
            allowed = np.asarray(kind, dtype=float)
            dist = np.abs(allowed - position[k])
            # argmin on a sorted list already breaks ties toward the smaller value
            out[k] = allowed[int(np.argmin(dist))]
    if bounds is not None:
        out = bounds.clamp(out)
    return out


@dataclass
class ProblemSpec:
    """A single optimization problem: objective, constraints, domain, sense."""

    name: str
    objective: Callable[[np.ndarray], float]
    bounds: Bounds
    inequality: list = field(default_factory=list)  # satisfied when g(x) <= 0
    equality: list = field(default_factory=list)    # satisfied when h(x) == 0
    kinds: Optional[list] = None                    # defaults to all-continuous
    sense: str = "min"
    known_optimum: Optional[float] = None

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ConfigurationError(f"bad sense: {self.sense!r}")
        if self.kinds is None:
            self.kinds = uniform_kinds("continuous", self.bounds.dimension)
        if len(self.kinds) != self.bounds.dimension:
            raise ConfigurationError("kinds length does not match bounds dimension")


@dataclass
class Individual:
    """One candidate solution with cached fitness values."""

    position: np.ndarray
    bits: Optional[np.ndarray] = None
    fitness: float = math.nan             # raw objective
    penalized_fitness: float = math.nan
    snapped: Optional[np.ndarray] = None  # kind-respecting image of position

    def copy(self) -> "Individual":
        return Individual(self.position.copy(),
                          None if self.bits is None else self.bits.copy(),
                          self.fitness, self.penalized_fitness,
                          None if self.snapped is None else self.snapped.copy())


class RngStream:
    """Deterministic random stream, splittable per trial as seed + index."""

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.gen = np.random.default_rng(self.seed)

    def split(self, trial_index: int) -> "RngStream":
        return RngStream(self.seed + trial_index)

    # thin pass-throughs so engines only ever touch the stream
    def random(self, size=None):
        return self.gen.random(size)

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self.gen.normal(loc, scale, size)

    def integers(self, low, high=None, size=None):
        return self.gen.integers(low, high, size)

    def choice_without_replacement(self, n: int, k: int) -> np.ndarray:
        return self.gen.choice(n, size=k, replace=False)


class EvalCounter:
    """Wraps an objective so invocations can be counted."""

    def __init__(self, fn: Callable[[np.ndarray], float]):
        self.fn = fn
        self.count = 0

    def __call__(self, x: np.ndarray) -> float:
        self.count += 1
        return self.fn(x)


def init_population(bounds: Bounds, n: int, rng: RngStream) -> list[Individual]:
    """Uniform random positions lb + u*(ub - lb); fitness left unset."""
    if n < 1:
        raise ConfigurationError("population size must be >= 1")
    width = bounds.upper - bounds.lower
    return [Individual(bounds.lower + rng.random(bounds.dimension) * width)
            for _ in range(n)]


@dataclass
class TrialStats:
    """Summary over repeated independent trials of one experiment."""

    best: float
    mean: float
    worst: float
    std_dev: float
    avg_function_evals: float
    total_time_s: float
    avg_time_s: float
    traces: list  # per trial: list of (iteration, best-so-far fitness)


def aggregate_trials(trial_bests: Sequence[float],
                     eval_counts: Sequence[int],
                     times: Sequence[float],
                     traces: Sequence[list],
                     sense: str = "min") -> TrialStats:
    """Best/mean/worst/sample-std over per-trial bests plus cost averages."""
    if len(trial_bests) == 0:
        raise ConfigurationError("no trials to aggregate")
    if not (len(trial_bests) == len(eval_counts) == len(times) == len(traces)):
        raise ConfigurationError("trial result lists have mismatched lengths")
    bests = np.asarray(trial_bests, dtype=float)
    best = bests.max() if sense == "max" else bests.min()
    worst = bests.min() if sense == "max" else bests.max()
    std = float(bests.std(ddof=1)) if bests.size > 1 else 0.0
    total_time = float(np.sum(times))
    return TrialStats(
        best=float(best),
        mean=float(bests.mean()),
        worst=float(worst),
        std_dev=std,
        avg_function_evals=float(np.mean(eval_counts)),
        total_time_s=total_time,
        avg_time_s=total_time / len(times),
        traces=[list(t) for t in traces],
    )
