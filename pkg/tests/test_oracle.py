import math

import numpy as np
import pytest

from swarmpack import PackingInstance, RunConfig, packing_fitness, run_optimizer, verify_packing
from swarmpack.oracle import certify, enumerate_local_optima, grid_search, grid_values, refine_local

# frozen from the oracle itself (resolution 2001, tol 1e-7); centers near
# (-36.1521, -65.7607) and (-4.0051, -65.7944)
OPTIMUM = 34.239278
SECOND_BASIN = 34.205584

EMPTY = PackingInstance(-100.0, 100.0, ())


@pytest.mark.parametrize("resolution", [3, 11, 201])
def test_empty_instance_grid(resolution):
    center, value = grid_search(EMPTY, resolution)
    assert tuple(center) == (0.0, 0.0)
    assert value == 100.0


def test_resolution_two_uses_corners(inst):
    _, value = grid_search(inst, 2)
    corners = [packing_fitness(c, inst) for c in [(-100, -100), (-100, 100), (100, -100), (100, 100)]]
    assert value == max(corners) == 0.0
    with pytest.raises(ValueError):
        grid_search(inst, 1)


def test_grid_values_orientation(inst):
    F = grid_values(inst, 5)
    xs = np.linspace(-100, 100, 5)
    for i in range(5):
        for j in range(5):
            assert F[i, j] == packing_fitness((xs[i], xs[j]), inst)


def test_grid_search_near_optimum(inst):
    _, value = grid_search(inst, 2001)
    assert abs(value - 34.2393) < 0.15


@pytest.mark.parametrize("r", [9, 26, 51, 101])
def test_nested_refinement_never_decreases(inst, r):
    # 2r - 1 points contain the r-point grid, so the maximum cannot drop
    assert grid_search(inst, 2 * r - 1)[1] >= grid_search(inst, r)[1]


def test_refine_reaches_both_basins(inst):
    center, value = refine_local(inst, grid_search(inst, 2001)[0], 1e-7)
    assert value == pytest.approx(OPTIMUM, abs=1e-6)
    assert verify_packing(inst, center, value, 1e-9)
    _, second = refine_local(inst, (-4.0, -64.0), 1e-7, step=1.0)
    assert second == pytest.approx(SECOND_BASIN, abs=1e-6)


def test_refine_monotone_from_many_starts(inst):
    rng = np.random.default_rng(3)
    for start in rng.uniform(-100, 100, (60, 2)):
        center, value = refine_local(inst, start, 1e-5, step=2.0)
        assert value >= packing_fitness(start, inst)
        if value >= 0:
            assert verify_packing(inst, center, value, 1e-9)


def test_refine_at_maximum_is_fixed():
    center, value = refine_local(EMPTY, (0.0, 0.0), 1e-7)
    assert tuple(center) == (0.0, 0.0) and value == 100.0
    with pytest.raises(ValueError):
        refine_local(EMPTY, (0.0, 0.0), 0.0)


def test_enumerate_empty_instance():
    optima = enumerate_local_optima(EMPTY, 101)
    assert len(optima) == 1
    assert tuple(optima[0][0]) == (0.0, 0.0) and optima[0][1] == 100.0


def test_enumerate_table9(inst):
    optima = enumerate_local_optima(inst, 401)
    values = [v for _, v in optima]
    assert values == sorted(values, reverse=True)
    assert values[0] == pytest.approx(OPTIMUM, abs=1e-6)
    assert values[1] == pytest.approx(SECOND_BASIN, abs=1e-6)
    for a in range(len(optima)):
        for b in range(a):
            assert math.dist(optima[a][0], optima[b][0]) >= 1.0


def test_enumerate_total_merge(inst):
    assert len(enumerate_local_optima(inst, 101, merge_radius=300.0)) == 1
    with pytest.raises(ValueError):
        enumerate_local_optima(inst, 101, merge_radius=0.0)


def test_certify(inst):
    res = certify(inst)
    assert res.best_radius == pytest.approx(OPTIMUM, abs=1e-6)
    assert verify_packing(inst, res.best_center, res.best_radius, 1e-9)
    assert res.local_optima == []


@pytest.mark.parametrize("alg", ["PSO", "GWO", "FA", "BA"])
def test_oracle_dominates_metaheuristics(objective, alg):
    res = run_optimizer(objective, RunConfig(alg, 30, 150, 5))
    assert res.best_fitness <= OPTIMUM + 1e-6
