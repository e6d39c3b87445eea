"""Brute-force certifier for packing instances.

A dense grid scan finds the basin, a rotating compass search polishes it.
Because the fitness is 1-Lipschitz, a grid with spacing h is within h/sqrt(2)
of the true optimum before polishing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .packing import PackingInstance, Point2, fitness_batch, verify_packing

DEFAULT_RESOLUTION = 2001
DEFAULT_MERGE_RADIUS = 1.0

_STENCIL_SIZE = 8
# stencil turns by this angle on each contraction so kinks cannot trap it
_TWIST = math.pi / _STENCIL_SIZE * 0.6180339887498949


@dataclass
class OracleResult:
    best_center: Point2
    best_radius: float
    local_optima: list = field(default_factory=list)


def _axis(inst: PackingInstance, resolution: int) -> np.ndarray:
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    return np.linspace(inst.lb, inst.ub, resolution)


def grid_values(inst: PackingInstance, resolution: int, chunk_rows: int = 128) -> np.ndarray:
    """Fitness on the ``resolution x resolution`` grid; ``F[i, j]`` is at ``(xs[i], xs[j])``."""
    xs = _axis(inst, resolution)
    obstacles = inst.obstacle_array()
    F = np.empty((resolution, resolution))
    for start in range(0, resolution, chunk_rows):
        rows = xs[start:start + chunk_rows]
        X, Y = np.meshgrid(rows, xs, indexing="ij")
        P = np.column_stack([X.ravel(), Y.ravel()])
        F[start:start + len(rows)] = fitness_batch(P, obstacles, inst.lb, inst.ub).reshape(len(rows), resolution)
    return F


def grid_search(inst: PackingInstance, resolution: int = DEFAULT_RESOLUTION):
    xs = _axis(inst, resolution)
    F = grid_values(inst, resolution)
    i, j = np.unravel_index(int(np.argmax(F)), F.shape)
    return Point2(float(xs[i]), float(xs[j])), float(F[i, j])


def refine_local(inst: PackingInstance, start, tol: float = 1e-7, step: float | None = None):
    """Compass search: move to the best stencil point, halve the radius when none improves.

    A successful move doubles the radius again (capped at ``step``) so long
    ridges are walked at a useful pace.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if step is None:
        step = (inst.ub - inst.lb) / (DEFAULT_RESOLUTION - 1)
    obstacles = inst.obstacle_array()
    x = np.asarray(start, dtype=float).copy()
    fx = float(fitness_batch(x[None, :], obstacles, inst.lb, inst.ub)[0])
    angles = np.arange(_STENCIL_SIZE) * (2.0 * math.pi / _STENCIL_SIZE)
    h = step
    while h >= tol:
        trial = x + h * np.column_stack([np.cos(angles), np.sin(angles)])
        ft = fitness_batch(trial, obstacles, inst.lb, inst.ub)
        k = int(np.argmax(ft))
        if ft[k] > fx:
            x, fx = trial[k], float(ft[k])
            h = min(2.0 * h, step)
        else:
            h *= 0.5
            angles = angles + _TWIST
    return Point2(float(x[0]), float(x[1])), fx


def _local_max_mask(F: np.ndarray) -> np.ndarray:
    padded = np.pad(F, 1, constant_values=-np.inf)
    n, m = F.shape
    mask = np.ones_like(F, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                mask &= F >= padded[1 + di:1 + di + n, 1 + dj:1 + dj + m]
    return mask


def enumerate_local_optima(inst: PackingInstance, resolution: int = DEFAULT_RESOLUTION,
                           merge_radius: float = DEFAULT_MERGE_RADIUS, tol: float = 1e-7):
    """Polished local maxima, best first, no two centers closer than ``merge_radius``."""
    if merge_radius <= 0:
        raise ValueError("merge_radius must be positive")
    xs = _axis(inst, resolution)
    F = grid_values(inst, resolution)
    spacing = xs[1] - xs[0]
    refined = []
    for i, j in np.argwhere(_local_max_mask(F)):
        refined.append(refine_local(inst, (xs[i], xs[j]), tol, step=spacing))
    refined.sort(key=lambda item: -item[1])
    kept: list = []
    for center, radius in refined:
        if all(math.dist(center, other) >= merge_radius for other, _ in kept):
            kept.append((center, radius))
    return kept


def certify(inst: PackingInstance, resolution: int = DEFAULT_RESOLUTION, tol: float = 1e-7,
            with_local_optima: bool = False, merge_radius: float = DEFAULT_MERGE_RADIUS) -> OracleResult:
    spacing = (inst.ub - inst.lb) / (resolution - 1)
    center, _ = grid_search(inst, resolution)
    center, radius = refine_local(inst, center, tol, step=spacing)
    optima = enumerate_local_optima(inst, resolution, merge_radius, tol) if with_local_optima else []
    if optima and optima[0][1] > radius:
        center, radius = optima[0]
    # only a non-negative radius can be certified as a packing
    if radius >= 0:
        assert verify_packing(inst, center, radius, 1e-9)
    return OracleResult(center, radius, optima)
