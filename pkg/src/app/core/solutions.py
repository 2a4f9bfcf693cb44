# dacopt
# Copyright (C) 2026  dacopt developers

import math
from typing import Callable

import numpy as np

from app.core.errors import BudgetExhausted, IndexOutOfRange, NonFiniteValue, OverlapOrGapError
from app.data.models import Direction, EvalCounter, FullSolution, PartialSolution

Objective = Callable[[np.ndarray], float]


def compose(a: PartialSolution, b: PartialSolution) -> FullSolution:
    """Places a's and b's values at their indices; the result never carries a cache"""
    dimension = len(a) + len(b)
    values = np.empty(dimension)
    filled = np.zeros(dimension, dtype=bool)
    for part in (a, b):
        if len(part) and (part.indices.min() < 0 or part.indices.max() >= dimension):
            raise OverlapOrGapError(f"Indices {part.indices.tolist()} leave a gap in 0..{dimension - 1}")
        if np.any(filled[part.indices]):
            raise OverlapOrGapError("Partial solutions overlap")
        values[part.indices] = part.values
        filled[part.indices] = True
    return FullSolution(values)


def project(x: FullSolution, indices) -> PartialSolution:
    indices = np.asarray(indices, dtype=np.intp)
    if len(indices) and (indices.min() < 0 or indices.max() >= x.dimension):
        raise IndexOutOfRange(f"Indices must lie in 0..{x.dimension - 1}")
    return PartialSolution(indices, x.values[indices])


def splice(partial: PartialSolution, row: FullSolution) -> FullSolution:
    """compose(partial, project(row, complement of partial)) without the intermediate copies"""
    values = row.values.copy()
    values[partial.indices] = partial.values
    return FullSolution(values)


def complement_of(indices, dimension: int) -> np.ndarray:
    mask = np.ones(dimension, dtype=bool)
    mask[np.asarray(indices, dtype=np.intp)] = False
    return np.flatnonzero(mask)


def counted_eval(f: Objective, x: FullSolution, counter: EvalCounter) -> float:
    """
    Evaluates f at x and charges one FE.
    A present cached_value is returned as is and costs nothing.
    """
    if x.cached_value is not None:
        return x.cached_value
    if counter.consumed >= counter.budget:
        raise BudgetExhausted(counter.budget)

    value = float(f(x.values))
    if math.isnan(value):
        raise NonFiniteValue(f"Objective returned NaN at FE {counter.consumed + 1}")
    x.cached_value = value
    counter.charge(x, value)
    return value


def better(a: float, b: float, direction: Direction) -> bool:
    """True when challenger a is at least as good as b; ties go to the challenger"""
    if math.isnan(a) or math.isnan(b):
        raise NonFiniteValue("Cannot rank NaN")
    if direction == Direction.MAXIMIZE:
        return a >= b
    return a <= b


def strictly_better(a: float, b: float, direction: Direction) -> bool:
    return better(a, b, direction) and a != b
