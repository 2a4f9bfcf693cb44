# dacopt
# Copyright (C) 2026  dacopt developers

import logging
from typing import Tuple

import numpy as np

from app.algorithms.framework import finish_run
from app.core.errors import BudgetExhausted, InvalidConfiguration
from app.core.solutions import Objective, counted_eval
from app.data.models import ConvergenceTrace, DacConfig, EvalCounter, FullSolution, ProblemSpec


def run_grid_search(f: Objective, spec: ProblemSpec, cfg: DacConfig,
                    points: int = 100) -> Tuple[FullSolution, ConvergenceTrace]:
    """
    One-dimensional grid search under the assumption that every variable shares
    one value: scores the all-v vector for `points` equally spaced v.
    """
    lower, upper = float(np.max(spec.lower)), float(np.min(spec.upper))
    if lower > upper:
        raise InvalidConfiguration("Bounds have no common value range for a shared-value grid")
    if points < 1:
        raise InvalidConfiguration(f"Grid needs at least one point, got {points}")

    counter = EvalCounter(cfg.budget, ConvergenceTrace(cfg.direction, cfg.log_every))
    evaluated = 0
    try:
        for value in np.linspace(lower, upper, points):
            counted_eval(f, FullSolution(np.full(spec.dimension, value)), counter)
            evaluated += 1
    except BudgetExhausted:
        logging.info("grid search stopped after %d of %d points", evaluated, points)

    return finish_run(counter, 1 if evaluated == points else 0, 'grid')
