# dacopt
# Copyright (C) 2026  dacopt developers

import math
from typing import Optional, Sequence

import numpy as np

from app.core.errors import InvalidConfiguration, OutOfRangeProbability
from app.core.rng import RngStream
from app.core.settings import Settings, SettingsOptions
from app.core.solutions import Objective
from app.data.models import InteractionWitness, ProbabilityReport, ProblemSpec

AM_GM_TOLERANCE = 1e-12


def flips(values, margin: float) -> bool:
    """
    values = f(xi,xj), f(xi',xj), f(xi,xj'), f(xi',xj').
    True when the order of xi against xi' strictly reverses between xj and xj'.
    The margin is relative to the largest magnitude involved.
    """
    a, b, c, d = values
    eps = margin * max(1.0, abs(a), abs(b), abs(c), abs(d))
    return (a + eps < b and c > d + eps) or (a > b + eps and c + eps < d)


def detect_interaction(f: Objective, i: int, j: int, spec: ProblemSpec, trials: int, rng: RngStream,
                       margin: Optional[float] = None) -> Optional[InteractionWitness]:
    """
    Random search for a rank flip between dimensions i and j.
    Finding none is evidence of additivity, not proof of it.
    """
    if i == j:
        raise InvalidConfiguration("Interaction needs two distinct dimensions")
    if trials < 1:
        raise InvalidConfiguration(f"trials must be at least 1, got {trials}")
    margin = Settings.get_value(SettingsOptions.INTERACTION_MARGIN) if margin is None else margin

    for _ in range(trials):
        base = rng.uniform(spec.lower, spec.upper)
        x_i_prime = rng.uniform(spec.lower[i], spec.upper[i])
        x_j_prime = rng.uniform(spec.lower[j], spec.upper[j])
        values = evaluate_quadruple(f, base, i, j, x_i_prime, x_j_prime)
        if flips(values, margin):
            return InteractionWitness(
                base=base,
                i=i,
                j=j,
                x_i=float(base[i]),
                x_i_prime=float(x_i_prime),
                x_j=float(base[j]),
                x_j_prime=float(x_j_prime),
                values=values,
            )
    return None


def evaluate_quadruple(f: Objective, base: np.ndarray, i: int, j: int, x_i_prime: float, x_j_prime: float):
    values = []
    for x_j in (base[j], x_j_prime):
        for x_i in (base[i], x_i_prime):
            point = np.array(base, dtype=float)
            point[i], point[j] = x_i, x_j
            values.append(float(f(point)))
    return tuple(values)


def lemma1_report(probabilities: Sequence[float], d_i: int, dimension: Optional[int] = None) -> ProbabilityReport:
    """
    Probability of complementing a d_i-dimensional partial accurately: the product
    of the per-variable probabilities, bounded by their mean to the power D - d_i.
    """
    probabilities = tuple(float(p) for p in probabilities)
    if dimension is not None and len(probabilities) != dimension - d_i:
        raise InvalidConfiguration(f"Expected {dimension - d_i} probabilities, got {len(probabilities)}")
    for p in probabilities:
        if not 0.0 <= p <= 1.0:
            raise OutOfRangeProbability(f"Probability {p} lies outside [0, 1]")

    if not probabilities:
        return ProbabilityReport(probabilities, 1.0, 1.0, 1.0)

    product = math.prod(probabilities)
    mean = math.fsum(probabilities) / len(probabilities)
    bound = mean ** len(probabilities)
    assert product <= bound * (1.0 + AM_GM_TOLERANCE) + AM_GM_TOLERANCE, "AM-GM violated"
    return ProbabilityReport(probabilities, product, mean, bound)
