# dacopt
# Copyright (C) 2026  dacopt developers

import itertools
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.core.errors import GridTooLarge, InvalidConfiguration
from app.core.solutions import Objective, complement_of, strictly_better
from app.data.models import Direction, FullSolution, GridSpec, PartialSolution


def oracle_cap(grid: GridSpec, cap: Optional[int] = None) -> int:
    return int(cap if cap is not None else grid.cap)


def accurate_complement(f: Objective, partial: PartialSolution, grid: GridSpec,
                        direction: Direction = Direction.MINIMIZE,
                        cap: Optional[int] = None) -> Tuple[PartialSolution, float]:
    """
    Exhaustive best complement of `partial` over a grid on the remaining dimensions.
    Grid axis k belongs to the k-th smallest remaining index. Points are visited in
    lexicographic order of their grid indices, so ties keep the smallest one.
    """
    limit = oracle_cap(grid, cap)
    if grid.size > limit:
        raise GridTooLarge(grid.size, limit)

    dimension = len(partial) + grid.dimension
    indices = complement_of(partial.indices, dimension)
    values = np.empty(dimension)
    values[partial.indices] = partial.values

    best_point, best_value = None, None
    for point in itertools.product(*grid.points):
        values[indices] = point
        value = float(f(values))
        if best_value is None or strictly_better(value, best_value, direction):
            best_point, best_value = point, value
    return PartialSolution(indices, best_point), best_value


def approximate_value(f: Objective, partial: PartialSolution, rows: Sequence[FullSolution],
                      direction: Direction = Direction.MINIMIZE) -> Tuple[int, float]:
    """Best composed value over the complements carried by `rows`, uncounted; lowest row wins ties"""
    best_row, best_value = -1, None
    for k, row in enumerate(rows):
        values = np.array(row.values if isinstance(row, FullSolution) else row, dtype=float)
        values[partial.indices] = partial.values
        value = float(f(values))
        if best_value is None or strictly_better(value, best_value, direction):
            best_row, best_value = k, value
    return best_row, best_value


def grid_rows(partial: PartialSolution, grid: GridSpec) -> List[FullSolution]:
    """Every grid complement as a full row (the partial's own coordinates set to 0)"""
    dimension = len(partial) + grid.dimension
    indices = complement_of(partial.indices, dimension)
    rows = []
    for point in itertools.product(*grid.points):
        values = np.zeros(dimension)
        values[indices] = point
        rows.append(FullSolution(values))
    return rows


def ranking_agreement(f: Objective, partials: Sequence[PartialSolution], rows: Sequence[FullSolution],
                      grid: GridSpec, direction: Direction = Direction.MINIMIZE,
                      cap: Optional[int] = None) -> float:
    """
    Fraction of partial pairs ranked the same way by accurate complements (grid
    oracle) and by approximate complements (best over the supplied rows).
    """
    if len(partials) < 2:
        raise InvalidConfiguration("Ranking agreement needs at least two partial solutions")
    # the cap bounds composed evaluations over all partials, not one grid sweep
    limit = oracle_cap(grid, cap)
    evaluations = len(partials) * grid.size
    if evaluations > limit:
        raise GridTooLarge(evaluations, limit)

    accurate = [accurate_complement(f, partial, grid, direction, cap=limit)[1] for partial in partials]
    approximate = [approximate_value(f, partial, rows, direction)[1] for partial in partials]

    pairs = list(itertools.combinations(range(len(partials)), 2))
    concordant = sum(
        1 for a, b in pairs
        if np.sign(accurate[a] - accurate[b]) == np.sign(approximate[a] - approximate[b])
    )
    return concordant / len(pairs)
