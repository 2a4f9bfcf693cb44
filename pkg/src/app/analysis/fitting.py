# dacopt
# Copyright (C) 2026  dacopt developers

import logging
from typing import Sequence

import numpy as np
from scipy import stats

from app.core.errors import InvalidConfiguration, NonPositiveValues
from app.data.models import ConvergenceTrace, FitResult


def loglinear_fit(trace: ConvergenceTrace, window: float = 0.5, strict: bool = False) -> FitResult:
    """
    Least-squares line through log(best value) against FEs over the trailing
    `window` fraction of the FE span.

    Non-positive values inside the window raise NonPositiveValues when strict;
    otherwise the fit moves to the longest positive suffix and is flagged truncated.
    """
    if not 0.0 < window <= 1.0:
        raise InvalidConfiguration(f"window must lie in (0, 1], got {window}")
    fes, values = trace.fes.astype(float), trace.values
    if len(fes) == 0:
        raise InvalidConfiguration("Cannot fit an empty trace")

    start = fes[-1] - window * (fes[-1] - fes[0])
    keep = fes >= start
    fes, values = fes[keep], values[keep]

    truncated = False
    if np.any(values <= 0):
        if strict:
            raise NonPositiveValues("Trace window contains values <= 0")
        last_bad = int(np.flatnonzero(values <= 0)[-1])
        fes, values = fes[last_bad + 1:], values[last_bad + 1:]
        truncated = True
        logging.warning("log-linear fit restricted to the last %d positive points", len(values))
        if len(values) == 0:
            raise NonPositiveValues("No positive suffix left to fit")

    logs = np.log(values)
    if len(fes) < 2 or np.ptp(fes) == 0 or np.ptp(logs) == 0:
        return FitResult(0.0, 0.0, degenerate=True, truncated=truncated, points=len(fes))

    fit = stats.linregress(fes, logs)
    return FitResult(float(fit.slope), float(fit.rvalue ** 2), truncated=truncated, points=len(fes))


def median_trace(traces: Sequence[ConvergenceTrace]) -> ConvergenceTrace:
    """Pointwise median over traces sampled on the same FE grid (shortest trace wins)"""
    if not traces:
        raise InvalidConfiguration("No traces to combine")
    length = min(len(trace) for trace in traces)
    fes = traces[0].fes[:length]
    values = np.median(np.stack([trace.values[:length] for trace in traces]), axis=0)

    median = ConvergenceTrace(traces[0].direction, traces[0].log_every)
    median.points = [(int(fe), float(value)) for fe, value in zip(fes, values)]
    median.best_value = median.points[-1][1] if median.points else None
    median.consumed = int(fes[-1]) if length else 0
    return median
