"""Classic unconstrained test functions as ProblemSpecs."""
from __future__ import annotations

import math

import numpy as np

from .core import Bounds, ConfigurationError, ProblemSpec

BENCHMARK_BOUNDS = {
    "sphere": (-5.12, 5.12),
    "ackley": (-15.0, 30.0),
    "rosenbrock": (-5.0, 10.0),
    "rastrigin": (-5.12, 5.12),
}


def sphere(x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(x * x))


def ackley(x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    n = x.size
    s1 = np.sum(x * x) / n
    s2 = np.sum(np.cos(2.0 * math.pi * x)) / n
    return float(-20.0 * math.exp(-0.2 * math.sqrt(s1)) - math.exp(s2)
                 + 20.0 + math.e)


def rosenbrock(x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (x[:-1] - 1.0) ** 2))


def rastrigin(x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(x * x - 10.0 * np.cos(2.0 * math.pi * x) + 10.0))


_FUNCTIONS = {
    "sphere": sphere,
    "ackley": ackley,
    "rosenbrock": rosenbrock,
    "rastrigin": rastrigin,
}


def eval_benchmark(name: str, x: np.ndarray) -> float:
    try:
        return _FUNCTIONS[name](x)
    except KeyError:
        raise ConfigurationError(f"unknown benchmark: {name!r}") from None


def make_benchmark(name: str, dimension: int) -> ProblemSpec:
    if name not in _FUNCTIONS:
        raise ConfigurationError(f"unknown benchmark: {name!r}")
    if dimension < 1:
        raise ConfigurationError("dimension must be >= 1")
    lo, hi = BENCHMARK_BOUNDS[name]
    return ProblemSpec(
        name=f"{name}-{dimension}d",
        objective=_FUNCTIONS[name],
        bounds=Bounds(np.full(dimension, lo), np.full(dimension, hi)),
        sense="min",
        known_optimum=0.0,
    )
