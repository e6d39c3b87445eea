"""Seed-batch experiments over (iterations, population) combinations."""

from __future__ import annotations

import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import ALGORITHM_IDS, RunConfig, run_optimizer

DEFAULT_COMBOS = ((100, 50), (500, 50), (1000, 50), (100, 100), (500, 100), (1000, 100))
DEFAULT_TOL = 1e-3

CSV_COLUMNS = ("algorithm", "iterations", "particles", "best", "worst", "mean", "median", "std", "efficacy")


@dataclass
class ExperimentSpec:
    combos: tuple = DEFAULT_COMBOS  # (max_iterations, population) pairs
    n_seeds: int = 100
    master_seed: int = 2022
    algorithms: tuple = ALGORITHM_IDS

    def __post_init__(self):
        if self.n_seeds < 1:
            raise ValueError("n_seeds must be >= 1")
        if not self.combos:
            raise ValueError("combos must be non-empty")
        self.combos = tuple((int(i), int(p)) for i, p in self.combos)
        self.algorithms = tuple(self.algorithms)


@dataclass(frozen=True)
class StatsSummary:
    best: float
    worst: float
    mean: float
    median: float
    std: float
    efficacy: int


@dataclass
class Cell:
    algorithm: str
    iterations: int
    particles: int
    seeds: list
    values: list
    summary: StatsSummary


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    optimum: float
    tol: float
    cells: dict = field(default_factory=dict)  # (algorithm, iterations, particles) -> Cell

    def cell(self, algorithm: str, iterations: int, particles: int) -> Cell:
        return self.cells[(algorithm, iterations, particles)]

    def rows(self):
        for (alg, iters, pop), cell in self.cells.items():
            s = cell.summary
            yield (alg, iters, pop, s.best, s.worst, s.mean, s.median, s.std, s.efficacy)


def generate_seeds(master_seed: int, n: int, stream: int = 0) -> list[int]:
    """``n`` distinct 64-bit seeds from numpy's SeedSequence hash of ``(master_seed, stream)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    seq = np.random.SeedSequence([int(master_seed), int(stream)])
    seeds: list[int] = []
    seen: set[int] = set()
    width = n
    while len(seeds) < n:
        for s in seq.generate_state(width, dtype=np.uint64):
            s = int(s)
            if s not in seen and len(seeds) < n:
                seen.add(s)
                seeds.append(s)
        width *= 2  # generate_state is prefix-stable, so earlier picks repeat
    return seeds


def summarize(values, optimum: float, tol: float = DEFAULT_TOL) -> StatsSummary:
    values = [float(v) for v in values]
    if not values:
        raise ValueError("cannot summarize an empty list")
    if tol < 0:
        raise ValueError("tol must be non-negative")
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return StatsSummary(
        best=max(values),
        worst=min(values),
        mean=statistics.fmean(values),
        median=statistics.median(values),
        std=std,
        efficacy=sum(v >= optimum - tol for v in values),
    )


def _run_one(args):
    objective, algorithm, iterations, particles, seed = args
    result = run_optimizer(objective, RunConfig(algorithm, particles, iterations, seed))
    return result.best_fitness


def run_cell(objective, algorithm: str, iterations: int, particles: int, seeds, workers: int = 1) -> list[float]:
    jobs = [(objective, algorithm, iterations, particles, s) for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_run_one(job) for job in jobs]


def run_experiment(spec: ExperimentSpec, objective, optimum: float | None = None,
                   tol: float = DEFAULT_TOL, workers: int = 1, progress=None) -> ExperimentResult:
    """Every algorithm on every combo, all fed the combo's shared seed list.

    ``optimum`` is the reference for efficacy; when omitted the best value seen
    anywhere in the experiment is used.
    """
    raw = {}
    seeds_by_combo = {}
    for k, (iters, pop) in enumerate(spec.combos):
        seeds = generate_seeds(spec.master_seed, spec.n_seeds, stream=k)
        seeds_by_combo[(iters, pop)] = seeds
        for alg in spec.algorithms:
            raw[(alg, iters, pop)] = run_cell(objective, alg, iters, pop, seeds, workers)
            if progress is not None:
                progress(alg, iters, pop)

    if optimum is None:
        optimum = max(max(v) for v in raw.values())
    result = ExperimentResult(spec, float(optimum), tol)
    for (alg, iters, pop), values in raw.items():
        seeds = seeds_by_combo[(iters, pop)]
        result.cells[(alg, iters, pop)] = Cell(alg, iters, pop, list(seeds), values,
                                               summarize(values, optimum, tol))
    return result


def rank_algorithms(result: ExperimentResult) -> dict:
    """Per combo: (best, second best, worst) by mean, then lower std, then name."""
    by_combo: dict = {}
    for (alg, iters, pop), cell in result.cells.items():
        by_combo.setdefault((iters, pop), []).append(cell)
    ranking = {}
    for combo, cells in by_combo.items():
        ordered = sorted(cells, key=lambda c: (-c.summary.mean, c.summary.std, c.algorithm))
        names = [c.algorithm for c in ordered]
        second = names[1] if len(names) > 1 else names[0]
        ranking[combo] = (names[0], second, names[-1])
    return ranking
