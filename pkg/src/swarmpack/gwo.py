"""Grey wolf optimizer and its random-walk variant (RWGWO)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfigurationError, linear_schedule, register


@dataclass
class Pack:
    """Wolf positions plus the remembered alpha, beta, delta (rows 0, 1, 2).

    GWO leaders persist across iterations: a wolf takes a leader slot only by
    beating it strictly. RWGWO keeps its leaders inside the pack instead.
    """

    position: np.ndarray
    fitness: np.ndarray
    lb: float
    ub: float
    leader_position: np.ndarray = None
    leader_fitness: np.ndarray = None

    @classmethod
    def start(cls, X0, objective) -> "Pack":
        X0 = np.array(X0, dtype=float)
        if len(X0) < 3:
            raise ConfigurationError("a wolf pack needs at least 3 members")
        pack = cls(X0, objective.evaluate_batch(X0), objective.lower_bound, objective.upper_bound)
        pack.update_leaders()
        return pack

    def leaders(self) -> np.ndarray:
        """Indices of the pack's top three; equal fitness goes to the lower index."""
        return np.argsort(-self.fitness, kind="stable")[:3]

    def update_leaders(self) -> None:
        if self.leader_position is None:
            pos, fit = self.position, self.fitness
        else:
            pos = np.vstack([self.leader_position, self.position])
            fit = np.concatenate([self.leader_fitness, self.fitness])
        top = np.argsort(-fit, kind="stable")[:3]
        self.leader_position = pos[top].copy()
        self.leader_fitness = fit[top].copy()


@dataclass
class GwoCoefficients:
    mu: np.ndarray
    c: np.ndarray
    b: float


def gwo_coefficients(b: float, rng, shape) -> GwoCoefficients:
    r1 = rng.random(shape)
    r2 = rng.random(shape)
    return GwoCoefficients(2.0 * b * r1 - b, 2.0 * r2, b)


def encircle(X: np.ndarray, leader_positions: np.ndarray, b: float, rng) -> np.ndarray:
    """Mean of the three leader-guided moves, each with its own (mu, c) draws."""
    moves = []
    for lead in leader_positions:
        k = gwo_coefficients(b, rng, X.shape)
        d = np.abs(k.c * lead - X)
        moves.append(lead - k.mu * d)
    return (moves[0] + moves[1] + moves[2]) / 3.0


def gwo_step(pack: Pack, t: int, T: int, objective, rng) -> Pack:
    if len(pack.position) < 3:
        raise ConfigurationError("a wolf pack needs at least 3 members")
    b = linear_schedule(2.0, 0.0, t, T)
    if pack.leader_position is None:
        pack.update_leaders()
    pack.position = np.clip(encircle(pack.position, pack.leader_position, b, rng), pack.lb, pack.ub)
    pack.fitness = objective.evaluate_batch(pack.position)
    pack.update_leaders()
    return pack


def cauchy_steps(rng, shape) -> np.ndarray:
    """Standard Cauchy variates by inverse CDF of the stream's uniforms."""
    return np.tan(np.pi * (rng.random(shape) - 0.5))


def random_walk_path(x0, n_steps: int, scale: float, rng) -> np.ndarray:
    """All walk states ``W_0 = x0, ..., W_n`` with ``W_k = W_{k-1} + scale * s_k``."""
    x0 = np.asarray(x0, dtype=float)
    steps = scale * cauchy_steps(rng, (n_steps, x0.size))
    return np.cumsum(np.vstack([x0[None, :], steps]), axis=0)


def random_walk(x0, n_steps: int, scale: float, rng) -> np.ndarray:
    if n_steps < 0 or scale < 0:
        raise ValueError("n_steps and scale must be non-negative")
    return random_walk_path(x0, n_steps, scale, rng)[-1]


def rwgwo_step(pack: Pack, t: int, T: int, objective, rng) -> Pack:
    """Leaders take one greedy random-walk step; the rest follow the GWO rule."""
    if len(pack.position) < 3:
        raise ConfigurationError("a wolf pack needs at least 3 members")
    scale = linear_schedule(2.0, 0.0, t, T)
    lead_idx = pack.leaders()
    for i in lead_idx:
        trial = np.clip(random_walk(pack.position[i], 1, scale, rng), pack.lb, pack.ub)
        f = objective.evaluate(trial)
        if f > pack.fitness[i]:
            pack.position[i] = trial
            pack.fitness[i] = f

    omega = np.ones(len(pack.position), dtype=bool)
    omega[lead_idx] = False
    if omega.any():
        b = linear_schedule(2.0, 0.0, t, T)
        leads = pack.position[lead_idx].copy()
        moved = np.clip(encircle(pack.position[omega], leads, b, rng), pack.lb, pack.ub)
        pack.position[omega] = moved
        pack.fitness[omega] = objective.evaluate_batch(moved)
    return pack


class _PackOptimizer:
    def __init__(self, objective, X0, rng, params, max_iterations):
        self.objective = objective
        self.rng = rng
        self.max_iterations = max_iterations
        self.pack = Pack.start(X0, objective)

    @staticmethod
    def default_params():
        return None

    def candidate(self):
        i = self.pack.leaders()[0]
        return self.pack.position[i], float(self.pack.fitness[i])


@register("GWO")
class GreyWolf(_PackOptimizer):
    def candidate(self):
        return self.pack.leader_position[0], float(self.pack.leader_fitness[0])

    def step(self, t):
        gwo_step(self.pack, t, self.max_iterations, self.objective, self.rng)


@register("RWGWO")
class RandomWalkGreyWolf(_PackOptimizer):
    def step(self, t):
        rwgwo_step(self.pack, t, self.max_iterations, self.objective, self.rng)
