"""Largest empty circle inside a square box with fixed circular obstacles.

The fitness of a candidate center X is the radius of the biggest circle
centered at X that stays inside the box and overlaps no obstacle:

    R(X) = min( min_i |X - C_i| - R_i,  X1 - lb, ub - X1, X2 - lb, ub - X2 )

Negative values mean X is inside an obstacle or outside the box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numba import njit

from .core import Objective


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"circle radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class PackingInstance:
    lb: float
    ub: float
    obstacles: tuple[Circle, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.ub > self.lb:
            raise ValueError(f"ub ({self.ub}) must exceed lb ({self.lb})")
        object.__setattr__(self, "obstacles", tuple(self.obstacles))

    def obstacle_array(self) -> np.ndarray:
        """``(k, 3)`` array of ``cx, cy, r`` rows."""
        if not self.obstacles:
            return np.empty((0, 3))
        return np.array([[c.center[0], c.center[1], c.radius] for c in self.obstacles], dtype=float)

    def to_dict(self) -> dict:
        return {
            "lb": self.lb,
            "ub": self.ub,
            "circles": [{"cx": c.center[0], "cy": c.center[1], "r": c.radius} for c in self.obstacles],
        }


TABLE9_CIRCLES = (
    ((0, 0), 15),
    ((-50, 0), 12),
    ((-70, 30), 15),
    ((40, -70), 10),
    ((20, 30), 20),
    ((60, 60), 20),
    ((50, 0), 15),
    ((-70, -30), 15),
    ((-40, 70), 20),
    ((-20, -30), 5),
)


def table9_instance() -> PackingInstance:
    """The ten-obstacle benchmark in the [-100, 100] square."""
    circles = [Circle(Point2(float(cx), float(cy)), float(r)) for (cx, cy), r in TABLE9_CIRCLES]
    return PackingInstance(-100.0, 100.0, tuple(circles))


def circle_clearance(X, c: Circle) -> float:
    return math.sqrt((X[0] - c.center[0]) ** 2 + (X[1] - c.center[1]) ** 2) - c.radius


def bound_clearances(X, lb: float, ub: float) -> tuple[float, float, float, float]:
    return (X[0] - lb, ub - X[0], X[1] - lb, ub - X[1])


def fitness_batch(P: np.ndarray, obstacles: np.ndarray, lb: float, ub: float) -> np.ndarray:
    """Vectorized fitness for an ``(n, 2)`` array of centers."""
    P = np.asarray(P, dtype=float)
    x, y = P[:, 0], P[:, 1]
    best = np.minimum(np.minimum(x - lb, ub - x), np.minimum(y - lb, ub - y))
    # per-obstacle loop keeps the operation order identical to the compiled kernel
    for k in range(obstacles.shape[0]):
        dx = x - obstacles[k, 0]
        dy = y - obstacles[k, 1]
        best = np.minimum(best, np.sqrt(dx * dx + dy * dy) - obstacles[k, 2])
    return best


@njit(cache=True)
def packing_kernel(p, data):
    """Scalar twin of :func:`fitness_batch`. ``data`` rows: [lb, ub, 0] then obstacles."""
    lb = data[0, 0]
    ub = data[0, 1]
    x = p[0]
    y = p[1]
    best = min(min(x - lb, ub - x), min(y - lb, ub - y))
    for k in range(1, data.shape[0]):
        dx = x - data[k, 0]
        dy = y - data[k, 1]
        v = np.sqrt(dx * dx + dy * dy) - data[k, 2]
        if v < best:
            best = v
    return best


def packing_fitness(X, inst: PackingInstance) -> float:
    X = np.asarray(X, dtype=float).reshape(1, 2)
    return float(fitness_batch(X, inst.obstacle_array(), inst.lb, inst.ub)[0])


class _PackingBatch:
    # a class rather than a closure so objectives pickle into worker processes
    def __init__(self, obstacles, lb, ub):
        self.obstacles, self.lb, self.ub = obstacles, lb, ub

    def __call__(self, X):
        return fitness_batch(X, self.obstacles, self.lb, self.ub)


def packing_objective(inst: PackingInstance) -> Objective:
    obstacles = inst.obstacle_array()
    lb, ub = float(inst.lb), float(inst.ub)
    data = np.vstack([[[lb, ub, 0.0]], obstacles.reshape(-1, 3)])
    return Objective(2, lb, ub, _PackingBatch(obstacles, lb, ub),
                     kernel=(packing_kernel, data), name="circle-packing")


def verify_packing(inst: PackingInstance, center, radius: float, tol: float = 1e-9) -> bool:
    """Check that a circle of ``radius`` at ``center`` fits, up to ``tol``."""
    if radius < 0:
        raise ValueError(f"radius must be non-negative, got {radius}")
    if tol < 0:
        raise ValueError(f"tol must be non-negative, got {tol}")
    if any(radius > b + tol for b in bound_clearances(center, inst.lb, inst.ub)):
        return False
    return all(radius <= circle_clearance(center, c) + tol for c in inst.obstacles)
