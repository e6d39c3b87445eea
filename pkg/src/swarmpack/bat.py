"""Bat algorithm with loudness / pulse-rate control.

The loudness and pulse-rate rules and the local search around the best bat
follow the standard formulation: loudness shrinks geometrically on every
accepted move, the pulse rate climbs toward ``r0`` as ``1 - exp(-gamma t)``.
All bats are updated against the global best known at the start of the step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ConfigurationError, register


@dataclass
class BatParams:
    A0: float = 1.0
    r0: float = 1.0
    alpha: float = 0.97
    gamma: float = 0.1
    f_min: float = 0.0
    f_max: float = 2.0

    def __post_init__(self):
        if not self.f_max > self.f_min:
            raise ConfigurationError("f_max must exceed f_min")
        if not 0 < self.alpha <= 1:
            raise ConfigurationError("alpha must be in (0, 1]")
        if self.gamma <= 0:
            raise ConfigurationError("gamma must be positive")


@dataclass
class Colony:
    position: np.ndarray
    velocity: np.ndarray
    frequency: np.ndarray
    loudness: np.ndarray
    pulse_rate: np.ndarray
    fitness: np.ndarray
    best_position: np.ndarray
    best_fitness: float
    lb: float
    ub: float

    @classmethod
    def start(cls, X0, objective, params: BatParams) -> "Colony":
        X0 = np.array(X0, dtype=float)
        n = len(X0)
        fit = objective.evaluate_batch(X0)
        i = int(np.argmax(fit))
        # pulse rate starts at r0 * (1 - e^0) = 0
        return cls(X0, np.zeros_like(X0), np.full(n, params.f_min), np.full(n, params.A0),
                   np.zeros(n), fit, X0[i].copy(), float(fit[i]),
                   objective.lower_bound, objective.upper_bound)


def bat_frequency(params: BatParams, rng, size=None):
    beta = rng.random(size)
    return params.f_min + (params.f_max - params.f_min) * beta


def loudness_pulse_update(A: float, r_base: float, params: BatParams, t: float):
    return params.alpha * A, r_base * (1.0 - math.exp(-params.gamma * t))


def bat_step(colony: Colony, global_best, t: int, params: BatParams, objective, rng) -> Colony:
    """One update of every bat; ``t`` counts elapsed iterations (1 on the first step)."""
    x_star = np.asarray(global_best, dtype=float)
    n, d = colony.position.shape

    colony.frequency = bat_frequency(params, rng, n)
    colony.velocity = colony.velocity + (colony.position - x_star) * colony.frequency[:, None]
    proposal = np.clip(colony.position + colony.velocity, colony.lb, colony.ub)

    local = rng.random(n) > colony.pulse_rate
    eps = 2.0 * rng.random((n, d)) - 1.0
    walk = np.clip(x_star + eps * colony.loudness.mean(), colony.lb, colony.ub)
    proposal[local] = walk[local]

    f_new = objective.evaluate_batch(proposal)
    coin = rng.random(n)
    accept = (coin < colony.loudness) & (f_new > colony.fitness)
    colony.position[accept] = proposal[accept]
    colony.fitness[accept] = f_new[accept]
    A_new, r_new = loudness_pulse_update(colony.loudness[accept], params.r0, params, t)
    colony.loudness[accept] = A_new
    colony.pulse_rate[accept] = r_new

    k = int(np.argmax(f_new))
    if f_new[k] > colony.best_fitness:
        colony.best_position = proposal[k].copy()
        colony.best_fitness = float(f_new[k])
    return colony


@register("BA")
class BatAlgorithm:
    def __init__(self, objective, X0, rng, params, max_iterations):
        self.objective = objective
        self.rng = rng
        self.params = params
        self.max_iterations = max_iterations
        self.colony = Colony.start(X0, objective, params)

    @staticmethod
    def default_params():
        return BatParams()

    def step(self, t):
        c = self.colony
        bat_step(c, c.best_position.copy(), t + 1, self.params, self.objective, self.rng)

    def candidate(self):
        return self.colony.best_position, self.colony.best_fitness
