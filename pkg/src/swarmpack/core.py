"""Shared machinery for every optimizer: RNG, objectives, schedules and the run loop.

All optimizers maximize. A run is fully determined by its objective and its
``RunConfig``; the random stream is numpy's PCG64 bit generator seeded with
the 64-bit run seed, and every draw goes through :class:`RngStream`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

ALGORITHM_IDS = ("PSO", "PSOd", "CPSO", "GWO", "RWGWO", "FA", "ApFA", "BA")

# algorithm id -> optimizer class, filled in by @register
ALGORITHMS: dict[str, type] = {}


class ConfigurationError(ValueError):
    """Raised for an invalid run configuration or unknown algorithm."""


class RngStream:
    """Deterministic stream of uniforms in [0, 1).

    Backed by PCG64 (O'Neill's permuted congruential generator, 128-bit state,
    64-bit output) as shipped with numpy. Doubles are produced from the top 53
    bits of each 64-bit output, so values never reach 1.0. The stream depends
    only on ``seed``, on every platform numpy supports.
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def random(self, size=None):
        """One uniform (``size=None``) or an array of uniforms, filled row-major."""
        if size is None:
            return float(self._gen.random())
        return self._gen.random(size)

    def spawn_seeds(self, n: int) -> list[int]:
        return [int(s) for s in self._gen.integers(0, 2**64, size=n, dtype=np.uint64)]


def make_rng(seed: int) -> RngStream:
    return RngStream(seed)


@dataclass(frozen=True)
class Objective:
    """A box-bounded maximization problem.

    ``batch`` maps an ``(n, dimension)`` array to ``n`` fitness values and is
    the single source of truth for fitness; ``evaluate`` goes through it too.
    ``kernel`` optionally carries ``(njit_function, data)`` with signature
    ``f(x_1d, data) -> float`` computing bit-identical values, which compiled
    inner loops (the firefly sweep) use instead of calling back into Python.
    """

    dimension: int
    lower_bound: float
    upper_bound: float
    batch: Callable[[np.ndarray], np.ndarray]
    kernel: Optional[tuple] = None
    name: str = "objective"

    def __post_init__(self):
        if self.dimension < 1:
            raise ConfigurationError("dimension must be >= 1")
        if not self.upper_bound > self.lower_bound:
            raise ConfigurationError("upper_bound must exceed lower_bound")

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float).reshape(1, self.dimension)
        return float(self.batch(x)[0])

    def evaluate_batch(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float).reshape(-1, self.dimension)
        return np.asarray(self.batch(X), dtype=float)

    def __call__(self, x) -> float:
        return self.evaluate(x)


def function_objective(fn: Callable[[np.ndarray], float], dimension: int,
                       lower_bound: float, upper_bound: float, name: str = "objective") -> Objective:
    """Wrap a scalar function ``fn(x) -> float`` as an :class:`Objective`."""

    def batch(X):
        return np.array([float(fn(row)) for row in X])

    return Objective(dimension, float(lower_bound), float(upper_bound), batch, name=name)


class CountingObjective:
    """Thin wrapper that counts fitness evaluations for one run."""

    def __init__(self, objective: Objective):
        self.objective = objective
        self.dimension = objective.dimension
        self.lower_bound = objective.lower_bound
        self.upper_bound = objective.upper_bound
        self.kernel = objective.kernel
        self.count = 0

    def evaluate(self, x) -> float:
        self.count += 1
        return self.objective.evaluate(x)

    def evaluate_batch(self, X) -> np.ndarray:
        values = self.objective.evaluate_batch(X)
        self.count += len(values)
        return values


@dataclass
class RunConfig:
    algorithm_id: str
    population: int = 50
    max_iterations: int = 100
    seed: int = 0
    params: Any = None  # None -> default_params(algorithm_id)

    def __post_init__(self):
        if self.population < 2:
            raise ConfigurationError("population must be >= 2")
        if self.max_iterations < 1:
            raise ConfigurationError("max_iterations must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")


@dataclass
class RunResult:
    best_position: np.ndarray
    best_fitness: float
    trace: np.ndarray
    evaluations: int
    wall_time: float = field(default=0.0, compare=False)

    def same_as(self, other: "RunResult") -> bool:
        """Bit-level equality of everything except wall time."""
        return (
            np.array_equal(self.best_position, other.best_position)
            and self.best_fitness == other.best_fitness
            and np.array_equal(self.trace, other.trace)
            and self.evaluations == other.evaluations
        )


def linear_schedule(start: float, end: float, t: float, T: float) -> float:
    return start + (end - start) * t / T


def clamp_to_bounds(position, lb: float, ub: float) -> np.ndarray:
    return np.clip(np.asarray(position, dtype=float), lb, ub)


def register(algorithm_id: str):
    def deco(cls):
        cls.algorithm_id = algorithm_id
        ALGORITHMS[algorithm_id] = cls
        return cls

    return deco


def default_params(algorithm_id: str):
    cls = _algorithm_class(algorithm_id)
    return cls.default_params()


def _algorithm_class(algorithm_id: str):
    # importing the package registers every optimizer
    from . import bat, firefly, gwo, pso  # noqa: F401

    try:
        return ALGORITHMS[algorithm_id]
    except KeyError:
        raise ConfigurationError(
            f"unknown algorithm_id {algorithm_id!r}; expected one of {', '.join(ALGORITHM_IDS)}"
        ) from None


def initial_population(objective, n: int, rng: RngStream) -> np.ndarray:
    """Uniform positions in the box; draw order agent-major, dimension-minor."""
    lb, ub = objective.lower_bound, objective.upper_bound
    return lb + (ub - lb) * rng.random((n, objective.dimension))


def run_optimizer(objective: Objective, config: RunConfig) -> RunResult:
    """Run one seeded optimization and return the elitist best with its trace.

    Each optimizer exposes ``step(t)`` (``t`` = 0-based iteration index) and
    ``candidate()`` returning its current best ``(position, fitness)``. The
    best-so-far record lives here, outside the population, so it never
    regresses.
    """
    cls = _algorithm_class(config.algorithm_id)
    params = config.params if config.params is not None else cls.default_params()
    start = time.perf_counter()

    counted = CountingObjective(objective)
    rng = make_rng(config.seed)
    X0 = initial_population(objective, config.population, rng)
    algo = cls(counted, X0, rng, params, config.max_iterations)

    best_pos, best_fit = algo.candidate()
    best_pos = np.array(best_pos, dtype=float)
    trace = np.empty(config.max_iterations)
    for t in range(config.max_iterations):
        algo.step(t)
        pos, fit = algo.candidate()
        if fit > best_fit:
            best_pos, best_fit = np.array(pos, dtype=float), fit
        trace[t] = best_fit

    return RunResult(best_pos, float(best_fit), trace, counted.count,
                     time.perf_counter() - start)
