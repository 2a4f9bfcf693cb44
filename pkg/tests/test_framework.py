# dacopt
# Copyright (C) 2026  dacopt developers

import numpy as np
import pytest

from app.algorithms import dachc, framework
from app.algorithms.framework import approximate_complement, random_grouping, run_dac
from app.algorithms.operators import (
    HcState, HillClimbOperator, SUCCESS_RATE, gaussian_mutation, update_step_size,
)
from app.core.errors import InvalidGroupCount
from app.core.rng import RngStream
from app.data.models import (
    DacConfig, EvalCounter, FullSolution, Grouping, PartialSolution, Population, ProblemSpec,
)
from app.data.repositories.benchmarks import BenchmarkRepository, FunctionId
from app.objectives.functions import sphere


def sphere_spec(dimension: int) -> ProblemSpec:
    return ProblemSpec(dimension=dimension, lower=-100.0, upper=100.0)


def test_random_grouping_partitions():
    grouping = random_grouping(6, 3, RngStream(1))
    assert grouping.sizes == [2, 2, 2]
    assert sorted(np.concatenate(grouping.groups).tolist()) == list(range(6))


def test_random_grouping_balances_remainder():
    assert sorted(random_grouping(7, 3, RngStream(2)).sizes, reverse=True) == [3, 2, 2]


def test_random_grouping_rejects_too_many_groups():
    with pytest.raises(InvalidGroupCount):
        random_grouping(4, 5, RngStream(0))


def hand_built_population(*rows) -> Population:
    solutions = [FullSolution(values, sphere(values)) for values in rows]
    return Population(rows=solutions, grouping=Grouping([[0], [1, 2]]))


def test_approximate_complement_single_row():
    population = hand_built_population([1.0, 0.0, 2.0])
    counter = EvalCounter(budget=10)
    choice = approximate_complement(0, 0, population, sphere, counter)
    assert (choice.row_index, choice.value, choice.fresh_evals) == (0, 5.0, 0)
    assert counter.consumed == 0


def test_approximate_complement_prefers_better_row():
    population = hand_built_population([1.0, 0.0, 2.0], [9.0, 1.0, 1.0])
    counter = EvalCounter(budget=10)
    choice = approximate_complement(0, 0, population, sphere, counter)
    assert (choice.row_index, choice.value, choice.fresh_evals) == (1, 3.0, 1)
    assert choice.complement.values.tolist() == [1.0, 1.0]
    assert counter.consumed == 1


def test_approximate_complement_tie_keeps_lowest_row():
    population = hand_built_population([1.0, 0.0, 2.0], [9.0, 2.0, 0.0])
    choice = approximate_complement(0, 0, population, sphere, EvalCounter(budget=10))
    assert (choice.row_index, choice.value, choice.fresh_evals) == (0, 5.0, 1)


def test_approximate_complement_without_cache():
    population = hand_built_population([1.0, 0.0, 2.0], [9.0, 1.0, 1.0])
    choice = approximate_complement(0, 0, population, sphere, EvalCounter(budget=10), use_cache=False)
    assert choice.fresh_evals == 2


def test_gaussian_mutation_zero_sigma_is_identity():
    partial = PartialSolution([0, 2], [3.0, -4.0])
    mutated = gaussian_mutation(partial, 0.0, sphere_spec(3), RngStream(0))
    assert mutated.values.tolist() == [3.0, -4.0]
    assert mutated.indices.tolist() == [0, 2]


def test_gaussian_mutation_is_unbiased():
    partial = PartialSolution([0, 1], [0.0, 0.0])
    rng = RngStream(4)
    spec = sphere_spec(2)
    steps = np.array([gaussian_mutation(partial, 1.0, spec, rng).values for _ in range(100000)])
    assert np.all(np.abs(steps.mean(axis=0)) < 3.0 / np.sqrt(100000))


def test_gaussian_mutation_clamps_to_bounds():
    partial = PartialSolution([0], [100.0])
    rng = RngStream(8)
    for _ in range(100):
        assert gaussian_mutation(partial, 50.0, sphere_spec(1), rng).values[0] <= 100.0


def test_update_step_size():
    assert update_step_size(1.0, True, 0.1) == pytest.approx(1.083287, abs=1e-6)
    assert update_step_size(1.0, False, 0.5) == pytest.approx(0.904837, abs=1e-6)
    sigma = update_step_size(2.0, True, 0.3)
    for _ in range(4):
        sigma = update_step_size(sigma, False, 0.3)
    assert sigma == pytest.approx(2.0, rel=1e-12)
    assert SUCCESS_RATE == 0.2


def test_update_step_size_is_clamped():
    assert update_step_size(1e-12, False, 1.0, (1e-12, 1e4)) == 1e-12
    assert update_step_size(1e4, True, 1.0, (1e-12, 1e4)) == 1e4


def test_hill_climb_state_tau():
    state = HcState(rows=2, groups=3, dimension=99, sigma_init=0.5, limits=(1e-12, 1e4))
    assert state.tau == pytest.approx(0.1)
    assert state.sigma.shape == (2, 3)
    operator = HillClimbOperator(sphere_spec(99), state)
    population = Population(rows=[FullSolution(np.zeros(99), 0.0)] * 2, groups=3)
    operator.attach(population)
    operator.feedback(population, 1, 2, True)
    assert population.step_sizes[1, 2] > 0.5
    assert population.step_sizes[0, 0] == 0.5


@pytest.mark.parametrize('population_size, groups, iterations', [(1, 1, 5), (2, 10, 3), (3, 4, 2)])
def test_uncached_dac_consumes_two_m_n_squared(population_size, groups, iterations):
    cfg = DacConfig(population_size=population_size, groups=groups, budget=10 ** 6, seed=3,
                    max_iterations=iterations, use_cache=False)
    _, trace = run_dac(sphere, sphere_spec(12), cfg)
    assert trace.iterations == iterations
    assert trace.consumed == population_size + iterations * 2 * groups * population_size ** 2


@pytest.mark.parametrize('population_size, groups, iterations', [(1, 1, 5), (2, 10, 3), (3, 4, 2)])
def test_cached_dac_skips_incumbent_evaluations(population_size, groups, iterations):
    cfg = DacConfig(population_size=population_size, groups=groups, budget=10 ** 6, seed=3,
                    max_iterations=iterations)
    _, trace = run_dac(sphere, sphere_spec(12), cfg)
    n = population_size
    assert trace.consumed == n + iterations * groups * n * (2 * n - 1)


def test_dac_stops_mid_group_at_budget():
    cfg = DacConfig(population_size=2, groups=4, budget=1001, seed=1)
    best, trace = run_dac(sphere, sphere_spec(8), cfg)
    assert trace.consumed == 1001
    assert trace.points[-1] == (1001, best.cached_value)


def test_dac_improves_f3():
    instance = BenchmarkRepository.make_instance(FunctionId.F3, 8, 2, 21)
    cfg = DacConfig(population_size=2, groups=4, budget=10000, seed=5)
    best, trace = run_dac(instance, instance.problem_spec(), cfg)
    initial = trace.values[cfg.population_size - 1]
    assert best.cached_value < initial
    assert best.cached_value == instance(best.values)


def test_dac_rows_never_get_worse():
    events = []
    cfg = DacConfig(population_size=3, groups=2, budget=3000, seed=9)
    run_dac(sphere, sphere_spec(6), cfg, listener=events.append)
    assert events
    assert all(event.after <= event.before for event in events)


def test_dac_single_group_is_plain_parallel_search():
    cfg = DacConfig(population_size=2, groups=1, budget=500, seed=2)
    best, trace = run_dac(sphere, sphere_spec(4), cfg)
    assert trace.consumed == 500
    assert np.all(np.diff(trace.values) <= 0)


def test_dac_is_reproducible():
    cfg = DacConfig(population_size=2, groups=3, budget=800, seed=17)
    _, first = run_dac(sphere, sphere_spec(6), cfg)
    _, second = run_dac(sphere, sphere_spec(6), cfg)
    assert first.points == second.points


def test_dac_with_custom_operator_and_decomposer():
    class FixedStep:
        def propose(self, population, j, i, partial, rng):
            return PartialSolution(partial.indices, partial.values * 0.5)

        def feedback(self, population, j, i, success):
            pass

    def halves(dimension, groups, rng):
        return Grouping([range(0, dimension // 2), range(dimension // 2, dimension)], dimension)

    cfg = DacConfig(population_size=2, groups=2, budget=10 ** 6, seed=4, max_iterations=30)
    best, _ = run_dac(sphere, sphere_spec(4), cfg, search_op=FixedStep(), decomposer=halves)
    assert best.cached_value < 1e-6


def test_step_size_stays_clamped_under_any_success_sequence():
    rng = np.random.default_rng(21)
    for tau in (0.01, 0.1, 1.0, 5.0):
        for rate in (0.0, 0.1, 0.2, 0.5, 1.0):
            sigma = 1.0
            for success in rng.random(2000) < rate:
                sigma = update_step_size(sigma, bool(success), tau)
                assert 1e-12 <= sigma <= 1e4

    sigma = 1.0
    for _ in range(2000):
        sigma = update_step_size(sigma, False, 1.0)
    assert sigma == 1e-12
    for _ in range(100):
        sigma = update_step_size(sigma, True, 1.0)
    assert sigma == 1e4


@pytest.mark.parametrize('algorithm', ['dac', 'dac-hc', 'phc'])
def test_cached_values_match_fresh_evaluations(algorithm, monkeypatch):
    seen = []
    original_install = framework.install

    def recording_install(population, j, solution):
        seen.append(population)
        original_install(population, j, solution)

    instance = BenchmarkRepository.make_instance(FunctionId.F5, 20, 5, 2)
    cfg = DacConfig(population_size=3, groups=4, budget=3001, seed=7)
    if algorithm == 'dac':
        monkeypatch.setattr(framework, 'install', recording_install)
        best, _ = run_dac(instance, instance.problem_spec(), cfg)
    else:
        monkeypatch.setattr(dachc, 'install', recording_install)
        run = dachc.run_dachc if algorithm == 'dac-hc' else dachc.run_phc
        best, _ = run(instance, instance.problem_spec(), cfg)

    population = seen[-1]
    assert all(row.cached_value == instance(row.values) for row in population.rows)
    assert best.cached_value == instance(best.values)
