# dacopt
# Copyright (C) 2026  dacopt developers

import itertools
import math

import numpy as np
import pytest

from app.algorithms.framework import best_complement
from app.algorithms.dachc import run_dachc
from app.analysis.fitting import loglinear_fit, median_trace
from app.analysis.interaction import detect_interaction, evaluate_quadruple, flips, lemma1_report
from app.analysis.oracles import accurate_complement, approximate_value, grid_rows, ranking_agreement
from app.core.errors import GridTooLarge, InvalidConfiguration, NonPositiveValues, OutOfRangeProbability
from app.core.rng import RngStream, derive_seed
from app.data.models import (
    ConvergenceTrace, DacConfig, EvalCounter, FullSolution, GridSpec, PartialSolution, Population, ProblemSpec,
)
from app.data.repositories.benchmarks import BenchmarkRepository, FunctionId
from app.objectives.functions import schwefel12, sphere

SCHWEFEL_GRID = np.linspace(-3.0, 3.0, 13)


def trace_of(points) -> ConvergenceTrace:
    trace = ConvergenceTrace()
    for fe, value in points:
        trace.observe(fe, value)
    return trace


def test_accurate_complement_on_sphere():
    complement, value = accurate_complement(sphere, PartialSolution([0], [3.0]), GridSpec([[-1.0, 0.0, 2.0]]))
    assert complement.indices.tolist() == [1]
    assert complement.values.tolist() == [0.0]
    assert value == 9.0


def test_accurate_complement_on_schwefel():
    complement, value = accurate_complement(schwefel12, PartialSolution([0], [2.0]), GridSpec([[-3.0, -2.0, 0.0]]))
    assert complement.values.tolist() == [-2.0]
    assert value == 4.0


def test_accurate_complement_tie_keeps_first_grid_point():
    complement, _ = accurate_complement(sphere, PartialSolution([1], [0.0]), GridSpec([[-1.0, 1.0]]))
    assert complement.values.tolist() == [-1.0]


def test_accurate_complement_grid_cap():
    grid = GridSpec([np.arange(10.0)] * 7)
    with pytest.raises(GridTooLarge):
        accurate_complement(sphere, PartialSolution([0], [0.0]), grid)
    with pytest.raises(GridTooLarge):
        accurate_complement(sphere, PartialSolution([0], [0.0]), GridSpec([[0.0, 1.0]] * 3), cap=4)


def test_grid_needs_two_points_per_axis():
    with pytest.raises(InvalidConfiguration):
        GridSpec([[1.0]])


def test_full_grid_population_reproduces_the_oracle():
    grid = GridSpec([SCHWEFEL_GRID])
    rows = grid_rows(PartialSolution([0], [0.0]), grid)
    population = Population(rows=rows)
    for x in SCHWEFEL_GRID:
        partial = PartialSolution([0], [x])
        complement, value = accurate_complement(schwefel12, partial, grid)
        row, approximate = approximate_value(schwefel12, partial, rows)
        assert approximate == value
        assert rows[row].values[1] == complement.values[0]

        choice, _ = best_complement(schwefel12, partial, np.array([1]), population, EvalCounter(budget=100))
        assert choice.value == value
        assert choice.complement.values.tolist() == complement.values.tolist()


def test_partial_populations_never_beat_the_oracle():
    grid = GridSpec([SCHWEFEL_GRID])
    rows = grid_rows(PartialSolution([0], [0.0]), grid)
    for size in (1, 2, 3):
        for subset in itertools.combinations(rows[::3], size):
            for x in SCHWEFEL_GRID:
                partial = PartialSolution([0], [x])
                _, value = accurate_complement(schwefel12, partial, grid)
                assert approximate_value(schwefel12, partial, subset)[1] >= value


def test_ranking_agreement_with_full_grid():
    grid = GridSpec([SCHWEFEL_GRID])
    partials = [PartialSolution([0], [x]) for x in (-2.0, -0.5, 0.0, 1.5, 3.0)]
    rows = grid_rows(partials[0], grid)
    assert ranking_agreement(schwefel12, partials, rows, grid) == 1.0


def test_ranking_agreement_single_pair():
    grid = GridSpec([[-1.0, 0.0, 1.0]])
    partials = [PartialSolution([0], [0.0]), PartialSolution([0], [2.0])]
    assert ranking_agreement(sphere, partials, [FullSolution([0.0, 0.0])], grid) == 1.0


def test_ranking_agreement_against_brute_force():
    grid = GridSpec([[-3.0, -2.0, 0.0]])
    partials = [PartialSolution([0], [x]) for x in (-2.0, -1.0, 0.5, 2.0, 3.0)]
    row = FullSolution([0.0, -3.0])

    accurate = [min(schwefel12([p.values[0], c]) for c in (-3.0, -2.0, 0.0)) for p in partials]
    approximate = [schwefel12([p.values[0], -3.0]) for p in partials]
    pairs = list(itertools.combinations(range(5), 2))
    expected = sum(np.sign(accurate[a] - accurate[b]) == np.sign(approximate[a] - approximate[b])
                   for a, b in pairs) / len(pairs)

    agreement = ranking_agreement(schwefel12, partials, [row], grid)
    assert agreement == expected
    assert 0.0 <= agreement < 1.0


def test_ranking_agreement_cap_counts_every_partial():
    grid = GridSpec([[-1.0, 0.0, 1.0]])
    partials = [PartialSolution([0], [x]) for x in (0.0, 1.0, 2.0)]
    rows = [FullSolution([0.0, 0.0])]
    assert ranking_agreement(sphere, partials[:2], rows, grid, cap=6) == 1.0
    with pytest.raises(GridTooLarge) as error:
        ranking_agreement(sphere, partials, rows, grid, cap=6)
    assert error.value.size == 9


def test_ranking_agreement_needs_two_partials():
    with pytest.raises(InvalidConfiguration):
        ranking_agreement(sphere, [PartialSolution([0], [0.0])], [FullSolution([0.0, 0.0])], GridSpec([[0.0, 1.0]]))


def test_flips():
    assert flips((1.0, 2.0, 3.0, 2.0), 0.0)
    assert not flips((1.0, 2.0, 1.0, 2.0), 0.0)
    assert not flips((1.0, 1.0 + 1e-15, 1.0, 1.0 - 1e-15), 1e-12)


def test_evaluate_quadruple_order():
    values = evaluate_quadruple(lambda x: x[0] * 10 + x[1], np.array([1.0, 2.0]), 0, 1, 3.0, 4.0)
    assert values == (12.0, 32.0, 14.0, 34.0)


def test_schwefel_pair_interacts():
    spec = ProblemSpec(dimension=2, lower=-100.0, upper=100.0)
    witness = detect_interaction(schwefel12, 0, 1, spec, 1000, RngStream(0))
    assert witness is not None
    a, b, c, d = witness.values
    assert (a < b and c > d) or (a > b and c < d)
    assert witness.values == evaluate_quadruple(schwefel12, witness.base, 0, 1, witness.x_i_prime,
                                                witness.x_j_prime)


def test_schwefel_detector_is_reliable():
    spec = ProblemSpec(dimension=2, lower=-100.0, upper=100.0)
    found = sum(detect_interaction(schwefel12, 0, 1, spec, 1000, RngStream(seed)) is not None
                for seed in range(100))
    assert found >= 99


def test_sphere_has_no_interaction():
    spec = ProblemSpec(dimension=5, lower=-100.0, upper=100.0)
    rng = RngStream(1)
    for i, j in itertools.combinations(range(5), 2):
        assert detect_interaction(sphere, i, j, spec, 1000, rng) is None


@pytest.mark.slow
def test_sphere_has_no_interaction_over_many_trials():
    spec = ProblemSpec(dimension=5, lower=-100.0, upper=100.0)
    rng = RngStream(2)
    for i, j in itertools.combinations(range(5), 2):
        assert detect_interaction(sphere, i, j, spec, 10000, rng) is None


def test_f2_blocks_do_not_interact():
    instance = BenchmarkRepository.make_instance(FunctionId.F2, 20, 5, 3)
    schwefel_dim, sphere_dim = int(instance.order[0]), int(instance.order[-1])
    witness = detect_interaction(instance, schwefel_dim, sphere_dim, instance.problem_spec(), 10000, RngStream(4))
    assert witness is None


def test_detect_interaction_validation():
    spec = ProblemSpec(dimension=2, lower=-1.0, upper=1.0)
    with pytest.raises(InvalidConfiguration):
        detect_interaction(sphere, 0, 0, spec, 10, RngStream(0))
    with pytest.raises(InvalidConfiguration):
        detect_interaction(sphere, 0, 1, spec, 0, RngStream(0))


def test_lemma1_report():
    report = lemma1_report([0.5, 0.5, 0.5], d_i=2, dimension=5)
    assert report.product == pytest.approx(0.125)
    assert report.bound == pytest.approx(0.125)

    report = lemma1_report([1.0, 1.0], 0)
    assert (report.product, report.bound) == (1.0, 1.0)

    report = lemma1_report([0.9, 0.1], 0)
    assert report.product == pytest.approx(0.09)
    assert report.bound == pytest.approx(0.25)
    assert report.mean == pytest.approx(0.5)


def test_lemma1_report_validation():
    with pytest.raises(OutOfRangeProbability):
        lemma1_report([0.5, 1.5], 0)
    with pytest.raises(InvalidConfiguration):
        lemma1_report([0.5], 0, dimension=3)
    assert lemma1_report([], 3).bound == 1.0


def test_product_never_exceeds_the_am_gm_bound():
    rng = np.random.default_rng(0)
    for _ in range(10000):
        probabilities = rng.uniform(0.0, 1.0, rng.integers(2, 10))
        report = lemma1_report(probabilities, 0)
        assert report.product < report.bound

    for p in np.linspace(0.0, 1.0, 11):
        report = lemma1_report([p] * 4, 0)
        assert math.isclose(report.product, report.bound, rel_tol=1e-12, abs_tol=1e-12)


def test_geometric_trace_is_log_linear():
    trace = trace_of((k, 10.0 * 2.0 ** -k) for k in range(1, 41))
    result = loglinear_fit(trace, window=1.0)
    assert result.slope == pytest.approx(-math.log(2.0))
    assert result.r_squared == pytest.approx(1.0)
    assert result.points == 40
    assert not result.degenerate


def test_fit_uses_trailing_window():
    trace = trace_of((k, 10.0 * 2.0 ** -k) for k in range(1, 101))
    assert loglinear_fit(trace, window=0.5).points == 50


def test_constant_trace_is_degenerate():
    result = loglinear_fit(trace_of((k, 3.0) for k in range(1, 11)))
    assert (result.slope, result.r_squared, result.degenerate) == (0.0, 0.0, True)


def test_fit_with_non_positive_values():
    trace = trace_of([(1, 4.0), (2, 2.0), (3, 0.0), (4, 0.0)])
    with pytest.raises(NonPositiveValues):
        loglinear_fit(trace, window=1.0, strict=True)
    with pytest.raises(NonPositiveValues):
        loglinear_fit(trace, window=1.0)

    trace = ConvergenceTrace()
    trace.points = [(1, 8.0), (2, -1.0), (3, 4.0), (4, 2.0), (5, 1.0)]
    result = loglinear_fit(trace, window=1.0)
    assert result.truncated
    assert result.points == 3
    assert result.slope == pytest.approx(-math.log(2.0))


def test_fit_validation():
    with pytest.raises(InvalidConfiguration):
        loglinear_fit(trace_of([(1, 1.0)]), window=0.0)
    with pytest.raises(InvalidConfiguration):
        loglinear_fit(ConvergenceTrace())


def test_median_trace():
    traces = [trace_of([(1, v), (2, v / 2)]) for v in (1.0, 4.0, 2.0)]
    median = median_trace(traces)
    assert median.points == [(1, 2.0), (2, 1.0)]


@pytest.mark.slow
def test_f1_converges_log_linearly():
    # 8e4 FEs keeps the trailing half above the ~1e-20 floor where x - o runs out of precision
    instance = BenchmarkRepository.make_instance(FunctionId.F1, 100, 10, 0)
    traces = []
    for run_index in range(5):
        cfg = DacConfig(population_size=2, groups=10, budget=80000, seed=derive_seed(0, 'run', run_index),
                        log_every=100)
        traces.append(run_dachc(instance, instance.problem_spec(), cfg)[1])
    result = loglinear_fit(median_trace(traces), window=0.5)
    assert result.slope < 0
    assert result.r_squared >= 0.9
