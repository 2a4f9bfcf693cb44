# dacopt
# Copyright (C) 2026  dacopt developers

import logging
from typing import Optional, Tuple

from app.algorithms.framework import (
    Decomposer, Listener, best_complement, finish_run, initialize_population, install, random_grouping, start_run,
)
from app.algorithms.operators import HcState, HillClimbOperator
from app.core.errors import BudgetExhausted
from app.core.rng import RngStream
from app.core.solutions import Objective, better, counted_eval, project, splice
from app.data.models import ComplementPolicy, ConvergenceTrace, DacConfig, FullSolution, ProblemSpec, StepEvent


def run_dachc(
        f: Objective,
        spec: ProblemSpec,
        cfg: DacConfig,
        rng: Optional[RngStream] = None,
        policy: ComplementPolicy = ComplementPolicy.CROSS_ROW,
        decomposer: Decomposer = random_grouping,
        listener: Optional[Listener] = None,
) -> Tuple[FullSolution, ConvergenceTrace]:
    """
    N parallel hill climbers over per-iteration random groupings.

    For each group slot i and row j: mutate the old partial, find the old
    partial's approximate complement over all rows (N-1 fresh FEs, the row's
    own combination is cached), evaluate the new partial with that same
    complement (1 FE), adapt sigma[j, i] and keep the better one.
    Every (i, j) step therefore costs exactly N FEs.

    With policy OWN_ROW the complement is always the row's own remainder (PHC).
    """
    rng = rng or RngStream(cfg.seed)
    counter = start_run(spec, cfg)
    population = initialize_population(f, spec, cfg, counter, rng)
    operator = HillClimbOperator(spec, HcState(len(population), cfg.groups, spec.dimension, cfg.sigma_init))
    operator.attach(population)

    name = 'dac-hc' if policy == ComplementPolicy.CROSS_ROW else 'phc'
    direction = cfg.direction
    iteration = 0
    try:
        while cfg.max_iterations is None or iteration < cfg.max_iterations:
            if population.grouping is None or cfg.regroup_each_iteration:
                population.grouping = decomposer(spec.dimension, cfg.groups, rng)

            for i, group in enumerate(population.grouping):
                complement = population.grouping.complement(i)
                for j in range(len(population)):
                    before = population[j].cached_value
                    old = project(population[j], group)
                    new = operator.propose(population, j, i, old, rng)

                    rows = None if policy == ComplementPolicy.CROSS_ROW else (j,)
                    choice, old_solution = best_complement(f, old, complement, population, counter,
                                                           own_row=j, rows=rows)
                    new_solution = splice(new, old_solution)
                    new_value = counted_eval(f, new_solution, counter)

                    success = better(new_value, choice.value, direction)
                    operator.feedback(population, j, i, success)
                    install(population, j, new_solution if success else old_solution)

                    assert better(population[j].cached_value, before, direction), "row got worse"
                    if listener:
                        listener(StepEvent(iteration, i, j, before, population[j].cached_value))

            iteration += 1
            logging.debug("%s iteration %d: %d FEs, best %r", name, iteration, counter.consumed,
                          counter.trace.best_value)
    except BudgetExhausted:
        pass

    return finish_run(counter, iteration, name)


def run_phc(
        f: Objective,
        spec: ProblemSpec,
        cfg: DacConfig,
        rng: Optional[RngStream] = None,
        decomposer: Decomposer = random_grouping,
        listener: Optional[Listener] = None,
) -> Tuple[FullSolution, ConvergenceTrace]:
    """Parallel hill climbing: every partial is complemented by its own row only"""
    return run_dachc(f, spec, cfg, rng, ComplementPolicy.OWN_ROW, decomposer, listener)
