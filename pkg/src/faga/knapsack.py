"""0-1 knapsack models, exact solvers, the binary hybrid engine, and data."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import knapsack_data
from .core import ConfigurationError, Individual, RngStream
from .engines import FireflyParams, GeneticParams, RunConfig, firefly_move


class ParseError(ValueError):
    """Malformed instance text; carries the byte offset of the failure."""


@dataclass
class KnapsackInstance:
    id: str
    profits: np.ndarray
    weights: np.ndarray
    capacity: float
    known_optimum: Optional[float] = None
    data_consistent: bool = True   # False when the source listing is incomplete

    def __post_init__(self):
        self.profits = np.asarray(self.profits, dtype=float)
        self.weights = np.asarray(self.weights, dtype=float)
        if self.profits.size != self.weights.size:
            raise ConfigurationError("profits and weights differ in length")
        if self.capacity <= 0 and self.profits.size:
            pass  # zero/negative capacity is legal: optimum is the empty pack

    @property
    def n(self) -> int:
        return self.profits.size


@dataclass
class MkpInstance:
    id: str
    profits: np.ndarray
    weights: np.ndarray     # shape (m, n): constraint i, item j
    capacities: np.ndarray
    known_optimum: Optional[float] = None

    def __post_init__(self):
        self.profits = np.asarray(self.profits, dtype=float)
        self.weights = np.atleast_2d(np.asarray(self.weights, dtype=float))
        self.capacities = np.asarray(self.capacities, dtype=float)
        if self.weights.shape != (self.capacities.size, self.profits.size):
            raise ConfigurationError("weight matrix shape does not match m x n")
        if np.any(self.capacities <= 0):
            raise ConfigurationError("capacities must be positive")

    @property
    def n(self) -> int:
        return self.profits.size

    @property
    def m(self) -> int:
        return self.capacities.size


@dataclass
class BinaryParams:
    p_mut: float = 0.05
    firefly: FireflyParams = field(default_factory=FireflyParams)
    genetic: GeneticParams = field(default_factory=GeneticParams)
    run: RunConfig = field(default_factory=lambda: RunConfig(population_size=30,
                                                             max_iterations=1000))
    theta: Optional[float] = None   # None -> 10 * max profit

    def __post_init__(self):
        if not 0.0 <= self.p_mut <= 1.0:
            raise ConfigurationError("p_mut must lie in [0, 1]")


def binarize(position: np.ndarray) -> np.ndarray:
    """Threshold a latent real vector at 0.5 (boundary maps to 1)."""
    return (np.asarray(position, dtype=float) >= 0.5).astype(np.int8)


def normalize_fitness(values: Sequence[float]) -> np.ndarray:
    """Affine rescale onto [0, 1]; a constant population maps to all 0.5."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ConfigurationError("cannot normalize an empty list")
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.full(values.size, 0.5)
    return (values - lo) / (hi - lo)


def skp_fitness(instance: KnapsackInstance, bits: np.ndarray, theta: float):
    """(penalized fitness, raw value, total weight) for one bit vector."""
    bits = np.asarray(bits)
    if bits.size != instance.n:
        raise ConfigurationError("bit vector length does not match item count")
    value = float(instance.profits @ bits)
    weight = float(instance.weights @ bits)
    fitness = value - theta * max(0.0, weight - instance.capacity)
    return fitness, value, weight


def mkp_fitness(instance: MkpInstance, bits: np.ndarray, theta: float):
    """(penalized fitness, raw value, per-constraint violations)."""
    bits = np.asarray(bits)
    if bits.size != instance.n:
        raise ConfigurationError("bit vector length does not match item count")
    value = float(instance.profits @ bits)
    loads = instance.weights @ bits
    violations = np.maximum(0.0, loads - instance.capacities)
    fitness = value - theta * float(violations.sum())
    return fitness, value, violations


def default_theta(instance) -> float:
    return 10.0 * float(np.max(instance.profits)) if instance.n else 1.0


def one_point_crossover(p1: np.ndarray, p2: np.ndarray, rng: RngStream) -> np.ndarray:
    """Single random cut; child = head of p1 + tail of p2."""
    p1 = np.asarray(p1)
    p2 = np.asarray(p2)
    if p1.size != p2.size:
        raise ConfigurationError("crossover parents differ in length")
    if p1.size < 2:
        raise ConfigurationError("crossover needs at least 2 genes")
    cut = int(rng.integers(1, p1.size))
    return np.concatenate([p1[:cut], p2[cut:]])


def bit_flip_mutation(bits: np.ndarray, p_mut: float, rng: RngStream) -> np.ndarray:
    """Flip each bit independently with probability p_mut."""
    bits = np.asarray(bits)
    if not 0.0 <= p_mut <= 1.0:
        raise ConfigurationError("p_mut must lie in [0, 1]")
    flips = rng.random(bits.size) < p_mut
    out = bits.copy()
    out[flips] = 1 - out[flips]
    return out


# ---------------------------------------------------------------- exact oracle

def dp_solve(instance: KnapsackInstance):
    """Exact optimum (value, bits).

    Integer weights use dynamic programming over capacity; real weights fall
    back to exhaustive enumeration (small n) or depth-first branch and bound.
    """
    n = instance.n
    if n == 0 or instance.capacity <= 0:
        return 0.0, np.zeros(n, dtype=np.int8)
    w = instance.weights
    v = instance.profits
    if np.all(w == np.round(w)):
        return _dp_integer(int(math.floor(instance.capacity)),
                           w.astype(np.int64), v)
    if n <= 25:
        return _enumerate(instance.capacity, w, v)
    return _branch_and_bound(instance.capacity, w, v)


def _dp_integer(W: int, w: np.ndarray, v: np.ndarray):
    n = w.size
    best = np.zeros(W + 1)
    take = np.zeros((n, W + 1), dtype=bool)
    for i in range(n):
        wi = int(w[i])
        if wi > W:
            continue
        cand = best[:W + 1 - wi] + v[i]
        improved = cand > best[wi:]
        best[wi:] = np.where(improved, cand, best[wi:])
        take[i, wi:] = improved
    bits = np.zeros(n, dtype=np.int8)
    c = W
    for i in range(n - 1, -1, -1):
        if take[i, c]:
            bits[i] = 1
            c -= int(w[i])
    return float(best[W]), bits


def _enumerate(W: float, w: np.ndarray, v: np.ndarray):
    n = w.size
    best_val, best_mask = 0.0, 0
    for mask in range(1 << n):
        tw = tv = 0.0
        m, i = mask, 0
        while m:
            if m & 1:
                tw += w[i]
                tv += v[i]
            m >>= 1
            i += 1
        if tw <= W and tv > best_val:
            best_val, best_mask = tv, mask
    bits = np.array([(best_mask >> i) & 1 for i in range(n)], dtype=np.int8)
    return best_val, bits


def _branch_and_bound(W: float, w: np.ndarray, v: np.ndarray):
    order = np.argsort(-(v / np.maximum(w, 1e-12)))
    ws, vs = w[order], v[order]
    n = w.size
    best = [0.0, np.zeros(n, dtype=np.int8)]
    chosen = np.zeros(n, dtype=np.int8)

    def bound(i, cap, val):
        while i < n and ws[i] <= cap:
            cap -= ws[i]
            val += vs[i]
            i += 1
        if i < n and cap > 0:
            val += vs[i] * cap / ws[i]
        return val

    def dfs(i, cap, val):
        if val > best[0]:
            best[0] = val
            best[1] = chosen.copy()
        if i == n or bound(i, cap, val) <= best[0]:
            return
        if ws[i] <= cap:
            chosen[i] = 1
            dfs(i + 1, cap - ws[i], val + vs[i])
            chosen[i] = 0
        dfs(i + 1, cap, val)

    dfs(0, W, 0.0)
    bits = np.zeros(n, dtype=np.int8)
    bits[order] = best[1]
    return float(best[0]), bits


# ---------------------------------------------------------- binary hybrid run

def _greedy_bits(profits: np.ndarray, weights: np.ndarray, capacity) -> np.ndarray:
    """Profit/weight-ratio warm start (row-sum weights for the MKP)."""
    w = weights if weights.ndim == 1 else weights.sum(axis=0)
    caps = np.atleast_1d(np.asarray(capacity, dtype=float))
    rows = np.atleast_2d(weights)
    order = np.argsort(-(profits / np.maximum(w, 1e-12)))
    bits = np.zeros(profits.size, dtype=np.int8)
    load = np.zeros(caps.size)
    for j in order:
        if np.all(load + rows[:, j] <= caps):
            bits[j] = 1
            load += rows[:, j]
    return bits


def binary_faga_solve(instance: Union[KnapsackInstance, MkpInstance],
                      params: BinaryParams, rng: RngStream):
    """Binary hybrid: firefly movement on latent [0,1] positions, one-point
    crossover, bit-flip mutation, elitism. Returns (bits, value, trace, evals).

    Only feasible solutions are ever reported; the empty pack is injected so
    one always exists.
    """
    theta = params.theta if params.theta is not None else default_theta(instance)
    is_mkp = isinstance(instance, MkpInstance)
    n = instance.n
    npop = params.run.population_size
    fparams, gparams = params.firefly, params.genetic
    evals = 0

    def fit(bits):
        nonlocal evals
        evals += 1
        if is_mkp:
            f, value, viol = mkp_fitness(instance, bits, theta)
            return f, value, bool(np.all(viol == 0))
        f, value, weight = skp_fitness(instance, bits, theta)
        return f, value, weight <= instance.capacity

    def make(latent):
        bits = binarize(latent)
        f, value, feasible = fit(bits)
        ind = Individual(latent, bits=bits, fitness=value, penalized_fitness=f)
        return ind, feasible

    pop = []
    best_feasible = (0.0, np.zeros(n, dtype=np.int8))   # empty pack fallback
    seeds = [_greedy_bits(instance.profits, instance.weights,
                          instance.capacities if is_mkp else instance.capacity)
             .astype(float),
             np.zeros(n)]
    for i in range(npop):
        latent = seeds[i] if i < len(seeds) else rng.random(n)
        ind, feasible = make(latent)
        pop.append(ind)
        if feasible and ind.fitness > best_feasible[0]:
            best_feasible = (ind.fitness, ind.bits.copy())
    best = max(pop, key=lambda p: p.penalized_fitness).copy()
    trace = [(0, best_feasible[0])]
    since_improvement = 0

    def absorb(ind, feasible):
        nonlocal best, best_feasible, since_improvement
        if ind.penalized_fitness > best.penalized_fitness:
            best = ind.copy()
        if feasible and ind.fitness > best_feasible[0]:
            best_feasible = (ind.fitness, ind.bits.copy())
            since_improvement = -1  # reset after the iteration bump

    for it in range(1, params.run.max_iterations + 1):
        # firefly pass on latent positions
        for i in range(npop):
            moved = False
            for j in range(npop):
                if i == j:
                    continue
                if pop[j].penalized_fitness > pop[i].penalized_fitness:
                    latent = firefly_move(pop[i].position, pop[j].position,
                                          fparams, rng)
                    latent = np.clip(latent, 0.0, 1.0)
                    bits = binarize(latent)
                    if not np.array_equal(bits, pop[i].bits):
                        ind, feasible = make(latent)
                        pop[i] = ind
                        absorb(ind, feasible)
                    else:
                        pop[i].position = latent
                    moved = True
            if not moved and fparams.alpha > 0:
                latent = np.clip(pop[i].position
                                 + fparams.alpha * (rng.random(n) - 0.5), 0.0, 1.0)
                bits = binarize(latent)
                if not np.array_equal(bits, pop[i].bits):
                    ind, feasible = make(latent)
                    pop[i] = ind
                    absorb(ind, feasible)
                else:
                    pop[i].position = latent

        # crossover + mutation on bit vectors
        if gparams.crossover_rate > 0 and n >= 2:
            for _ in range(max(1, npop // 2)):
                if rng.random() >= gparams.crossover_rate:
                    continue
                i1 = int(rng.integers(npop))
                i2 = int(rng.integers(npop - 1))
                if i2 >= i1:
                    i2 += 1
                child_bits = one_point_crossover(pop[i1].bits, pop[i2].bits, rng)
                if params.p_mut > 0:
                    child_bits = bit_flip_mutation(child_bits, params.p_mut, rng)
                f, value, feasible = fit(child_bits)
                if (f > pop[i1].penalized_fitness and f > pop[i2].penalized_fitness):
                    ind = Individual(child_bits.astype(float), bits=child_bits,
                                     fitness=value, penalized_fitness=f)
                    worst = min(range(npop), key=lambda k: pop[k].penalized_fitness)
                    pop[worst] = ind
                    absorb(ind, feasible)

        # elitism
        cur_best = max(pop, key=lambda p: p.penalized_fitness)
        if best.penalized_fitness > cur_best.penalized_fitness:
            worst = min(range(npop), key=lambda k: pop[k].penalized_fitness)
            pop[worst] = best.copy()
        since_improvement += 1
        trace.append((it, best_feasible[0]))
        if (params.run.stagnation_window
                and since_improvement >= params.run.stagnation_window):
            break

    return best_feasible[1], best_feasible[0], trace, evals


# --------------------------------------------------------- built-in instances

def list_builtin() -> list[str]:
    return [f"f{i}" for i in range(1, 21)]


def builtin_skp(instance_id: str) -> KnapsackInstance:
    """One of the twenty bundled single-knapsack instances (f1..f20).

    Instances whose bundled listing is internally inconsistent carry
    data_consistent=False; for those, treat dp_solve on the listed items as
    the ground truth rather than known_optimum. When the weight and profit
    lists differ in length, the extra tail entries are dropped.
    """
    try:
        listed_n, capacity, weights, profits, optimum = knapsack_data.RAW[instance_id]
    except KeyError:
        raise ConfigurationError(f"unknown instance: {instance_id!r}") from None
    k = min(len(weights), len(profits))
    return KnapsackInstance(
        id=instance_id,
        profits=np.asarray(profits[:k], dtype=float),
        weights=np.asarray(weights[:k], dtype=float),
        capacity=float(capacity),
        known_optimum=float(optimum),
        data_consistent=instance_id in knapsack_data.CONSISTENT,
    )


# --------------------------------------------------- text format (multi-dim)

def _tokens_with_offsets(text: str):
    out = []
    pos = 0
    for line in text.splitlines(keepends=True):
        stripped = line.split("#", 1)[0]
        col = 0
        for tok in stripped.split():
            col = stripped.index(tok, col)
            out.append((tok, pos + col))
            col += len(tok)
        pos += len(line)
    return out


def parse_orlib_mkp(text: str, strict: bool = False) -> list[MkpInstance]:
    """Parse a whitespace-delimited multidimensional knapsack file.

    Per instance: a header `n m optimum` (optimum 0 means unknown), n profits,
    then the m constraint rows of n coefficients each, then m capacities.
    Instances repeat until the token stream is exhausted. Lines may carry `#`
    comments. With strict=True an input containing no instances is an error.
    """
    toks = _tokens_with_offsets(text)
    cursor = 0

    def need(what, cast):
        nonlocal cursor
        if cursor >= len(toks):
            offset = len(text)
            raise ParseError(f"byte {offset}: expected {what}, found end of input")
        tok, offset = toks[cursor]
        try:
            value = cast(tok)
        except ValueError:
            raise ParseError(
                f"byte {offset}: expected {what}, found {tok!r}") from None
        cursor += 1
        return value

    instances = []
    while cursor < len(toks):
        n = need("item count", int)
        m = need("constraint count", int)
        if n < 1 or m < 1:
            raise ParseError(
                f"byte {toks[cursor - 1][1]}: item and constraint counts "
                "must be positive")
        optimum = need("optimum", float)
        profits = [need("profit", float) for _ in range(n)]
        rows = [[need("weight coefficient", float) for _ in range(n)]
                for _ in range(m)]
        caps = [need("capacity", float) for _ in range(m)]
        instances.append(MkpInstance(
            id=f"mkp-{len(instances)}",
            profits=np.asarray(profits),
            weights=np.asarray(rows),
            capacities=np.asarray(caps),
            known_optimum=None if optimum == 0 else optimum,
        ))
    if strict and not instances:
        raise ParseError("byte 0: expected item count, found end of input")
    return instances


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def serialize_mkp(instances: Sequence[MkpInstance]) -> str:
    """Inverse of parse_orlib_mkp (round-trips through the same format)."""
    parts = []
    for inst in instances:
        opt = inst.known_optimum if inst.known_optimum is not None else 0
        parts.append(f"{inst.n} {inst.m} {_fmt(opt)}")
        parts.append(" ".join(_fmt(p) for p in inst.profits))
        for row in inst.weights:
            parts.append(" ".join(_fmt(c) for c in row))
        parts.append(" ".join(_fmt(c) for c in inst.capacities))
    return "\n".join(parts) + "\n"


def skp_as_mkp(instance: KnapsackInstance) -> MkpInstance:
    """View a single-constraint instance through the multi-constraint model."""
    return MkpInstance(
        id=instance.id,
        profits=instance.profits,
        weights=instance.weights[None, :],
        capacities=np.array([instance.capacity]),
        known_optimum=instance.known_optimum,
    )
