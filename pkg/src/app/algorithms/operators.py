# dacopt
# Copyright (C) 2026  dacopt developers

import math
from typing import Optional, Protocol, Tuple

import numpy as np

from app.core.rng import RngStream
from app.core.settings import Settings, SettingsOptions
from app.data.models import PartialSolution, Population, ProblemSpec

SUCCESS_RATE = 0.2


def step_size_limits() -> Tuple[float, float]:
    return Settings.get_value(SettingsOptions.SIGMA_MIN), Settings.get_value(SettingsOptions.SIGMA_MAX)


class HcState:
    """Step sizes per (row, group slot) and the adaptation rate 1/sqrt(D+1)"""

    def __init__(self, rows: int, groups: int, dimension: int, sigma_init: float = 1.0,
                 limits: Optional[Tuple[float, float]] = None):
        self.limits = limits or step_size_limits()
        self.sigma = np.full((rows, groups), float(np.clip(sigma_init, *self.limits)))
        self.tau = 1.0 / math.sqrt(dimension + 1)


def gaussian_mutation(partial: PartialSolution, sigma: float, spec: ProblemSpec, rng: RngStream) -> PartialSolution:
    """Isotropic normal step of standard deviation sigma, clamped to the box"""
    values = partial.values + rng.normal(sigma, len(partial))
    return PartialSolution(partial.indices, spec.clip(values, partial.indices))


def update_step_size(sigma: float, success: bool, tau: float,
                     limits: Optional[Tuple[float, float]] = None) -> float:
    lower, upper = limits or step_size_limits()
    indicator = 1.0 if success else 0.0
    return min(max(sigma * math.exp(tau * (indicator - SUCCESS_RATE)), lower), upper)


class SearchOperator(Protocol):
    def propose(self, population: Population, j: int, i: int, partial: PartialSolution,
                rng: RngStream) -> PartialSolution:
        ...

    def feedback(self, population: Population, j: int, i: int, success: bool):
        ...


class HillClimbOperator:
    """Gaussian mutation driven by the population's step sizes, adapted by the 1/5 rule"""

    def __init__(self, spec: ProblemSpec, state: HcState):
        self.spec = spec
        self.state = state

    def attach(self, population: Population):
        population.step_sizes = self.state.sigma

    def propose(self, population: Population, j: int, i: int, partial: PartialSolution,
                rng: RngStream) -> PartialSolution:
        return gaussian_mutation(partial, self.state.sigma[j, i], self.spec, rng)

    def feedback(self, population: Population, j: int, i: int, success: bool):
        self.state.sigma[j, i] = update_step_size(self.state.sigma[j, i], success, self.state.tau, self.state.limits)
