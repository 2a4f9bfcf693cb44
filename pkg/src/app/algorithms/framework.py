# dacopt
# Copyright (C) 2026  dacopt developers

import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from app.algorithms.operators import HcState, HillClimbOperator, SearchOperator
from app.core.errors import BudgetExhausted, InvalidGroupCount
from app.core.rng import RngStream
from app.core.solutions import Objective, better, counted_eval, project, splice, strictly_better
from app.data.models import (
    ComplementChoice, ConvergenceTrace, DacConfig, EvalCounter, FullSolution, Grouping, PartialSolution,
    Population, ProblemSpec, StepEvent,
)

Decomposer = Callable[[int, int, RngStream], Grouping]
Listener = Callable[[StepEvent], None]


def random_grouping(dimension: int, groups: int, rng: RngStream) -> Grouping:
    """Random permutation of 0..D-1 cut into M chunks whose sizes differ by at most one"""
    if not 1 <= groups <= dimension:
        raise InvalidGroupCount(f"Need 1 <= M <= D, got M={groups}, D={dimension}")
    return Grouping(np.array_split(rng.permutation(dimension), groups), dimension)


def start_run(spec: ProblemSpec, cfg: DacConfig) -> EvalCounter:
    cfg.validate_for(spec)
    return EvalCounter(cfg.budget, ConvergenceTrace(cfg.direction, cfg.log_every))


def initialize_population(f: Objective, spec: ProblemSpec, cfg: DacConfig, counter: EvalCounter,
                          rng: RngStream) -> Population:
    rows = []
    for _ in range(cfg.population_size):
        row = FullSolution(rng.uniform(spec.lower, spec.upper))
        counted_eval(f, row, counter)
        rows.append(row)
    return Population(rows=rows, groups=cfg.groups, sigma_init=cfg.sigma_init)


def best_complement(f: Objective, partial: PartialSolution, complement: np.ndarray, population: Population,
                    counter: EvalCounter, own_row: Optional[int] = None,
                    rows: Optional[Sequence[int]] = None) -> Tuple[ComplementChoice, FullSolution]:
    """
    Best composed value of `partial` over the complements of the given rows.
    Row `own_row` is read from its cache instead of being re-evaluated.
    Ties keep the lowest row index.
    """
    direction = counter.trace.direction
    chosen, chosen_value, chosen_solution, fresh = -1, None, None, 0
    for k in (range(len(population)) if rows is None else rows):
        if k == own_row and population[k].cached_value is not None:
            solution = population[k]
        else:
            solution = splice(partial, population[k])
            fresh += 1
        value = counted_eval(f, solution, counter)
        if chosen_value is None or strictly_better(value, chosen_value, direction):
            chosen, chosen_value, chosen_solution = k, value, solution

    choice = ComplementChoice(
        row_index=chosen,
        value=chosen_value,
        fresh_evals=fresh,
        complement=project(population[chosen], complement),
    )
    return choice, chosen_solution


def approximate_complement(j: int, i: int, population: Population, f: Objective, counter: EvalCounter,
                           use_cache: bool = True,
                           rows: Optional[Sequence[int]] = None) -> ComplementChoice:
    group = population.grouping[i]
    partial = project(population[j], group)
    choice, _ = best_complement(f, partial, population.grouping.complement(i), population, counter,
                                own_row=j if use_cache else None, rows=rows)
    return choice


def install(population: Population, j: int, solution: FullSolution):
    population.rows[j] = solution


def finish_run(counter: EvalCounter, iterations: int, name: str) -> Tuple[FullSolution, ConvergenceTrace]:
    trace = counter.trace.close()
    trace.iterations = iterations
    logging.info("%s finished: %d iterations, %d FEs, best %r", name, iterations, counter.consumed,
                 counter.best.cached_value if counter.best else None)
    return counter.best, trace


def run_dac(
        f: Objective,
        spec: ProblemSpec,
        cfg: DacConfig,
        search_op: Optional[SearchOperator] = None,
        decomposer: Decomposer = random_grouping,
        rng: Optional[RngStream] = None,
        listener: Optional[Listener] = None,
) -> Tuple[FullSolution, ConvergenceTrace]:
    """
    Generic divide and approximate conquer loop.

    Per group: propose N new partials, find approximate complements for the old
    and the new partial of every row against the population as it stood, then
    keep the better of each pair and install its complement.
    """
    rng = rng or RngStream(cfg.seed)
    counter = start_run(spec, cfg)
    population = initialize_population(f, spec, cfg, counter, rng)
    if search_op is None:
        search_op = HillClimbOperator(spec, HcState(len(population), cfg.groups, spec.dimension, cfg.sigma_init))
    if hasattr(search_op, 'attach'):
        search_op.attach(population)

    direction = cfg.direction
    size = len(population)
    iteration = 0
    try:
        while cfg.max_iterations is None or iteration < cfg.max_iterations:
            if population.grouping is None or cfg.regroup_each_iteration:
                population.grouping = decomposer(spec.dimension, cfg.groups, rng)

            for i, group in enumerate(population.grouping):
                complement = population.grouping.complement(i)
                olds = [project(population[j], group) for j in range(size)]
                news = [search_op.propose(population, j, i, olds[j], rng) for j in range(size)]

                choices: List[Tuple[FullSolution, FullSolution]] = []
                try:
                    for j in range(size):
                        own_row = j if cfg.use_cache else None
                        _, old_solution = best_complement(f, olds[j], complement, population, counter, own_row)
                        _, new_solution = best_complement(f, news[j], complement, population, counter)
                        choices.append((old_solution, new_solution))
                finally:
                    for j, (old_solution, new_solution) in enumerate(choices):
                        before = population[j].cached_value
                        success = better(new_solution.cached_value, old_solution.cached_value, direction)
                        search_op.feedback(population, j, i, success)
                        install(population, j, new_solution if success else old_solution)
                        assert better(population[j].cached_value, before, direction), "row got worse"
                        if listener:
                            listener(StepEvent(iteration, i, j, before, population[j].cached_value))

            iteration += 1
            logging.debug("dac iteration %d: %d FEs, best %r", iteration, counter.consumed,
                          counter.trace.best_value)
    except BudgetExhausted:
        pass

    return finish_run(counter, iteration, 'dac')
