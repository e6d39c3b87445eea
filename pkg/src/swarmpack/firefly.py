"""Firefly algorithm (FA) and the adaptive-parameter variant ApFA.

Brightness is the fitness (maximization). One sweep visits every ordered
pair (i, j); whenever j is strictly brighter than i, i moves toward j with a
uniform kick scaled to the box width, and i's brightness is refreshed before
the sweep continues.

Random draws per sweep: one ``(n, n, d)`` block of uniforms is drawn up front
and entry ``[i, j]`` is the kick for the move of i toward j (unused entries
are discarded). ApFA then draws ``rand1, rand2`` for its beta0 update.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import ConfigurationError, register


@dataclass
class FaParams:
    alpha: float = 1.0
    beta0: float = 1.0
    gamma: float = 0.1
    betamin: float = 0.1
    theta: float = 0.97

    def __post_init__(self):
        if self.gamma <= 0:
            raise ConfigurationError("gamma must be positive")
        if not 0 <= self.betamin <= self.beta0:
            raise ConfigurationError("need 0 <= betamin <= beta0")
        if not 0 < self.theta <= 1:
            raise ConfigurationError("theta must be in (0, 1]")


@dataclass
class Fireflies:
    position: np.ndarray
    intensity: np.ndarray
    alpha: float
    beta0: float
    lb: float
    ub: float

    @classmethod
    def start(cls, X0, objective, params: FaParams) -> "Fireflies":
        X0 = np.array(X0, dtype=float)
        return cls(X0, objective.evaluate_batch(X0), params.alpha, params.beta0,
                   objective.lower_bound, objective.upper_bound)

    @property
    def scale(self) -> float:
        return self.ub - self.lb


def firefly_distance(xi, xj) -> float:
    xi = np.asarray(xi, dtype=float)
    xj = np.asarray(xj, dtype=float)
    if xi.shape != xj.shape:
        raise ValueError("positions must have equal dimension")
    s = 0.0
    for a, b in zip(xi, xj):
        s += (a - b) * (a - b)
    return math.sqrt(s)


def attractiveness(params: FaParams, r: float) -> float:
    return params.betamin + (params.beta0 - params.betamin) * math.exp(-params.gamma * r * r)


def fa_move(xi, xj, params: FaParams, scale: float, rng=None, eps=None, lb=-np.inf, ub=np.inf):
    """New position of the dimmer firefly ``xi`` after being drawn toward ``xj``.

    ``eps`` (uniform in [-0.5, 0.5] per dimension) is drawn from ``rng`` when
    not supplied. ``params.alpha`` is the current randomization strength.
    """
    xi = np.asarray(xi, dtype=float)
    xj = np.asarray(xj, dtype=float)
    if eps is None:
        eps = rng.random(xi.size) - 0.5
    beta = attractiveness(params, firefly_distance(xi, xj))
    kick = params.alpha * scale
    out = np.empty_like(xi)
    for k in range(xi.size):
        v = xi[k] + beta * (xj[k] - xi[k]) + kick * eps[k]
        out[k] = min(max(v, lb), ub)
    return out


@njit(cache=True)
def _compiled_sweep(X, I, eps, kick, beta0, betamin, gamma, lb, ub, fn, data):
    n, d = X.shape
    evals = 0
    for i in range(n):
        for j in range(n):
            if I[j] > I[i]:
                s = 0.0
                for k in range(d):
                    diff = X[i, k] - X[j, k]
                    s += diff * diff
                r = np.sqrt(s)
                beta = betamin + (beta0 - betamin) * np.exp(-gamma * r * r)
                for k in range(d):
                    v = X[i, k] + beta * (X[j, k] - X[i, k]) + kick * eps[i, j, k]
                    X[i, k] = min(max(v, lb), ub)
                I[i] = fn(X[i], data)
                evals += 1
    return evals


def _python_sweep(swarm: Fireflies, params: FaParams, eps, objective) -> None:
    X, I = swarm.position, swarm.intensity
    n = len(X)
    for i in range(n):
        for j in range(n):
            if I[j] > I[i]:
                X[i] = fa_move(X[i], X[j], params, swarm.scale, eps=eps[i, j], lb=swarm.lb, ub=swarm.ub)
                I[i] = objective.evaluate(X[i])


def fa_sweep(swarm: Fireflies, params: FaParams, objective, rng, compiled: bool = True) -> Fireflies:
    """One pairwise attraction sweep using the swarm's current alpha and beta0.

    The compiled path needs ``objective.kernel``; it yields the same positions
    and intensities as the pure-Python path.
    """
    n, d = swarm.position.shape
    eps = rng.random((n, n, d)) - 0.5
    current = FaParams(swarm.alpha, swarm.beta0, params.gamma,
                       min(params.betamin, swarm.beta0), params.theta)
    kernel = getattr(objective, "kernel", None)
    if compiled and kernel is not None:
        fn, data = kernel
        evals = _compiled_sweep(swarm.position, swarm.intensity, eps, current.alpha * swarm.scale,
                                current.beta0, current.betamin, current.gamma,
                                swarm.lb, swarm.ub, fn, data)
        if hasattr(objective, "count"):
            objective.count += int(evals)
    else:
        _python_sweep(swarm, current, eps, objective)
    return swarm


def fa_step(swarm: Fireflies, params: FaParams, objective, rng, compiled: bool = True) -> Fireflies:
    fa_sweep(swarm, params, objective, rng, compiled)
    swarm.alpha *= params.theta
    return swarm


def apfa_update_params(alpha_t: float, beta0_t: float, t: int, G_max: int, rng):
    """Geometric alpha decay by (1 - 1/G_max); beta0 redrawn with probability 1/2."""
    if G_max < 1:
        raise ValueError("G_max must be >= 1")
    rand1 = rng.random()
    rand2 = rng.random()
    alpha = (1.0 - 1.0 / G_max) * alpha_t
    beta0 = rand1 if rand2 < 0.5 else beta0_t
    return alpha, beta0


def apfa_step(swarm: Fireflies, params: FaParams, t: int, G_max: int, objective, rng,
              compiled: bool = True) -> Fireflies:
    fa_sweep(swarm, params, objective, rng, compiled)
    swarm.alpha, swarm.beta0 = apfa_update_params(swarm.alpha, swarm.beta0, t, G_max, rng)
    return swarm


class _FireflyOptimizer:
    compiled = True

    def __init__(self, objective, X0, rng, params, max_iterations):
        self.objective = objective
        self.rng = rng
        self.params = params
        self.max_iterations = max_iterations
        self.swarm = Fireflies.start(X0, objective, params)

    def candidate(self):
        i = int(np.argmax(self.swarm.intensity))
        return self.swarm.position[i], float(self.swarm.intensity[i])


@register("FA")
class Firefly(_FireflyOptimizer):
    @staticmethod
    def default_params():
        return FaParams()

    def step(self, t):
        fa_step(self.swarm, self.params, self.objective, self.rng, self.compiled)


@register("ApFA")
class AdaptiveFirefly(_FireflyOptimizer):
    @staticmethod
    def default_params():
        return FaParams(alpha=0.5)

    def step(self, t):
        apfa_step(self.swarm, self.params, t, self.max_iterations, self.objective, self.rng,
                  self.compiled)
