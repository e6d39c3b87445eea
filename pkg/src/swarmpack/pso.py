"""Particle swarm variants: inertia-weight PSO, normal-sampling PSOd, constricted CPSO."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import ConfigurationError, linear_schedule, register


@dataclass
class PsoParams:
    w_max: float = 0.9
    w_min: float = 0.2
    c1: float = 2.0
    c2: float = 2.0
    v_max: Optional[float] = None  # None -> 0.2 * (ub - lb)

    def velocity_limit(self, lb: float, ub: float) -> float:
        v_max = 0.2 * (ub - lb) if self.v_max is None else self.v_max
        if v_max <= 0:
            raise ConfigurationError("v_max must be positive")
        return v_max


@dataclass
class Swarm:
    """Struct-of-arrays particle state; row i is particle i."""

    position: np.ndarray
    velocity: np.ndarray
    best_position: np.ndarray
    best_fitness: np.ndarray
    lb: float
    ub: float

    @classmethod
    def start(cls, X0, objective) -> "Swarm":
        X0 = np.array(X0, dtype=float)
        fit = objective.evaluate_batch(X0)
        return cls(X0, np.zeros_like(X0), X0.copy(), fit, objective.lower_bound, objective.upper_bound)

    def global_best(self) -> tuple[np.ndarray, float]:
        i = int(np.argmax(self.best_fitness))  # first index wins ties
        return self.best_position[i], float(self.best_fitness[i])

    def refresh(self, objective) -> None:
        fit = objective.evaluate_batch(self.position)
        better = fit > self.best_fitness
        self.best_position[better] = self.position[better]
        self.best_fitness[better] = fit[better]


def constriction_factor(c1: float, c2: float) -> float:
    phi = c1 + c2
    if phi <= 4:
        raise ValueError(f"constriction needs c1 + c2 > 4, got {phi}")
    return 2.0 / abs(2.0 - phi - math.sqrt(phi * phi - 4.0 * phi))


def _fly(swarm: Swarm, velocity: np.ndarray, v_max: float, objective) -> Swarm:
    swarm.velocity = np.clip(velocity, -v_max, v_max)
    swarm.position = np.clip(swarm.position + swarm.velocity, swarm.lb, swarm.ub)
    swarm.refresh(objective)
    return swarm


def pso_step(swarm: Swarm, global_best, w: float, params: PsoParams, objective, rng) -> Swarm:
    """v <- w v + c1 U1 (pbest - x) + c2 U2 (gbest - x), clamp, x <- x + v, clamp."""
    shape = swarm.position.shape
    u1 = rng.random(shape)
    u2 = rng.random(shape)
    x = swarm.position
    v = (w * swarm.velocity
         + params.c1 * u1 * (swarm.best_position - x)
         + params.c2 * u2 * (np.asarray(global_best) - x))
    return _fly(swarm, v, params.velocity_limit(swarm.lb, swarm.ub), objective)


def cpso_step(swarm: Swarm, global_best, params: PsoParams, objective, rng) -> Swarm:
    chi = constriction_factor(params.c1, params.c2)
    shape = swarm.position.shape
    u1 = rng.random(shape)
    u2 = rng.random(shape)
    x = swarm.position
    v = chi * (swarm.velocity
               + params.c1 * u1 * (swarm.best_position - x)
               + params.c2 * u2 * (np.asarray(global_best) - x))
    return _fly(swarm, v, params.velocity_limit(swarm.lb, swarm.ub), objective)


def box_muller(k1, k2):
    """Standard normal from two uniforms; ``k1`` must be in (0, 1]."""
    return np.sqrt(-2.0 * np.log(k1)) * np.cos(2.0 * np.pi * k2)


def _nonzero_uniforms(rng, shape) -> np.ndarray:
    k = rng.random(shape)
    zero = k == 0.0
    while zero.any():
        k[zero] = rng.random(int(zero.sum()))
        zero = k == 0.0
    return k


def psod_moments(x, pbest, gbest):
    mu = (x + pbest + gbest) / 3.0
    sigma = np.sqrt(((x - mu) ** 2 + (pbest - mu) ** 2 + (gbest - mu) ** 2) / 3.0)
    return mu, sigma


def psod_step(swarm: Swarm, global_best, objective, rng) -> Swarm:
    """Resample every coordinate from N(mu, sigma) built on x, pbest and gbest."""
    shape = swarm.position.shape
    k1 = _nonzero_uniforms(rng, shape)
    k2 = rng.random(shape)
    mu, sigma = psod_moments(swarm.position, swarm.best_position, np.asarray(global_best))
    swarm.position = np.clip(mu + sigma * box_muller(k1, k2), swarm.lb, swarm.ub)
    swarm.refresh(objective)
    return swarm


class _SwarmOptimizer:
    def __init__(self, objective, X0, rng, params, max_iterations):
        self.objective = objective
        self.rng = rng
        self.params = params
        self.max_iterations = max_iterations
        self.swarm = Swarm.start(X0, objective)

    def candidate(self):
        return self.swarm.global_best()


@register("PSO")
class ParticleSwarm(_SwarmOptimizer):
    @staticmethod
    def default_params():
        return PsoParams()

    def step(self, t):
        p = self.params
        w = linear_schedule(p.w_max, p.w_min, t, self.max_iterations)
        gbest, _ = self.swarm.global_best()
        pso_step(self.swarm, gbest.copy(), w, p, self.objective, self.rng)


@register("CPSO")
class ConstrictedParticleSwarm(_SwarmOptimizer):
    @staticmethod
    def default_params():
        return PsoParams(c1=2.05, c2=2.05)

    def step(self, t):
        gbest, _ = self.swarm.global_best()
        cpso_step(self.swarm, gbest.copy(), self.params, self.objective, self.rng)


@register("PSOd")
class NormalUpdateParticleSwarm(_SwarmOptimizer):
    @staticmethod
    def default_params():
        return None

    def step(self, t):
        gbest, _ = self.swarm.global_best()
        psod_step(self.swarm, gbest.copy(), self.objective, self.rng)
