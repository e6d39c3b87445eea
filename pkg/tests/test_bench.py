import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swarmpack import RunConfig, run_optimizer
from swarmpack.bench import (
    Cell,
    ExperimentResult,
    ExperimentSpec,
    StatsSummary,
    generate_seeds,
    rank_algorithms,
    run_experiment,
    summarize,
)

SMALL = ExperimentSpec(combos=((5, 6), (8, 5)), n_seeds=4, master_seed=7, algorithms=("PSO", "GWO", "BA"))


def test_seeds_deterministic_and_distinct():
    assert generate_seeds(2022, 100) == generate_seeds(2022, 100)
    assert len(set(generate_seeds(2022, 100))) == 100
    assert len(generate_seeds(2022, 1)) == 1
    assert generate_seeds(2022, 10) != generate_seeds(2023, 10)
    assert generate_seeds(2022, 10, stream=0) != generate_seeds(2022, 10, stream=1)
    assert generate_seeds(2022, 5) == generate_seeds(2022, 50)[:5]
    assert all(0 <= s < 2**64 for s in generate_seeds(1, 200))
    with pytest.raises(ValueError):
        generate_seeds(1, 0)


def test_summarize_examples():
    s = summarize([1, 2, 3, 4], optimum=4)
    assert (s.best, s.worst, s.mean, s.median) == (4, 1, 2.5, 2.5)
    assert s.std == pytest.approx(math.sqrt(5 / 3), abs=1e-12)
    assert s.std == pytest.approx(1.2910, abs=1e-4)
    s = summarize([5], optimum=5)
    assert (s.best, s.worst, s.mean, s.median, s.std, s.efficacy) == (5, 5, 5, 5, 0.0, 1)
    assert summarize([34.2393] * 7, 34.2393, 1e-3).efficacy == 7
    assert summarize([34.2393, 34.2385, 34.2056], 34.2393, 1e-3).efficacy == 2
    with pytest.raises(ValueError):
        summarize([], 1.0)
    with pytest.raises(ValueError):
        summarize([1.0], 1.0, tol=-1)


@settings(max_examples=1000, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=30), st.randoms(use_true_random=False))
def test_summarize_permutation_invariant(values, rnd):
    shuffled = list(values)
    rnd.shuffle(shuffled)
    a, b = summarize(values, 0.0), summarize(shuffled, 0.0)
    assert (a.best, a.worst, a.median, a.efficacy) == (b.best, b.worst, b.median, b.efficacy)
    assert a.mean == pytest.approx(b.mean, rel=1e-12, abs=1e-9)
    assert a.std == pytest.approx(b.std, rel=1e-9, abs=1e-9)
    assert a.worst <= a.median <= a.best
    assert a.worst - 1e-9 <= a.mean <= a.best + 1e-9


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec(n_seeds=0)
    with pytest.raises(ValueError):
        ExperimentSpec(combos=())
    assert len(ExperimentSpec().combos) == 6


def test_minimal_spec(objective):
    spec = ExperimentSpec(combos=((10, 8),), n_seeds=1, master_seed=3, algorithms=("CPSO",))
    result = run_experiment(spec, objective)
    assert list(result.cells) == [("CPSO", 10, 8)]
    cell = result.cell("CPSO", 10, 8)
    expected = run_optimizer(objective, RunConfig("CPSO", 8, 10, cell.seeds[0])).best_fitness
    s = cell.summary
    assert s.best == s.worst == s.mean == s.median == expected
    assert s.std == 0.0 and s.efficacy == 1


@pytest.fixture(scope="module")
def small_result(objective):
    return run_experiment(SMALL, objective, optimum=34.239278)


def test_shared_seeds_across_algorithms(small_result):
    for k, (iters, pop) in enumerate(SMALL.combos):
        expected = generate_seeds(SMALL.master_seed, SMALL.n_seeds, stream=k)
        for alg in SMALL.algorithms:
            assert small_result.cell(alg, iters, pop).seeds == expected


def test_cells_match_direct_runs(small_result, objective):
    cell = small_result.cell("GWO", 8, 5)
    direct = [run_optimizer(objective, RunConfig("GWO", 5, 8, s)).best_fitness for s in cell.seeds]
    assert cell.values == direct


def test_cell_invariants(small_result):
    assert len(small_result.cells) == len(SMALL.combos) * len(SMALL.algorithms)
    for cell in small_result.cells.values():
        s = cell.summary
        assert s.worst <= s.median <= s.best
        assert s.worst <= s.mean <= s.best
        assert 0 <= s.efficacy <= SMALL.n_seeds
        assert s.best <= 34.239278 + 1e-6


def test_experiment_deterministic(small_result, objective):
    again = run_experiment(SMALL, objective, optimum=34.239278)
    assert list(again.rows()) == list(small_result.rows())


def test_parallel_matches_serial(small_result, objective):
    spec = ExperimentSpec(combos=((5, 6),), n_seeds=4, master_seed=7, algorithms=("PSO",))
    par = run_experiment(spec, objective, optimum=34.239278, workers=2)
    assert par.cell("PSO", 5, 6).values == small_result.cell("PSO", 5, 6).values


def test_default_optimum_is_best_seen(objective):
    spec = ExperimentSpec(combos=((5, 6),), n_seeds=3, master_seed=1, algorithms=("PSO", "BA"))
    result = run_experiment(spec, objective)
    assert result.optimum == max(max(c.values) for c in result.cells.values())


def _fake(cells):
    result = ExperimentResult(ExperimentSpec(), 0.0, 1e-3)
    for name, mean, std in cells:
        result.cells[(name, 100, 50)] = Cell(name, 100, 50, [], [], StatsSummary(mean, mean, mean, mean, std, 0))
    return result


def test_rank_rules():
    assert rank_algorithms(_fake([("PSO", 1.0, 0.0)])) == {(100, 50): ("PSO", "PSO", "PSO")}
    ranking = rank_algorithms(_fake([("A", 5.0, 0.3), ("B", 5.0, 0.1), ("C", 4.0, 0.0), ("D", 6.0, 9.0)]))
    assert ranking[(100, 50)] == ("D", "B", "C")
    tie = rank_algorithms(_fake([("Z", 1.0, 0.1), ("Y", 1.0, 0.1)]))
    assert tie[(100, 50)] == ("Y", "Z", "Z")
