# dacopt
# Copyright (C) 2026  dacopt developers

import enum
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from app.core.errors import InvalidConfiguration, InvalidGroupCount, OverlapOrGapError, IndexOutOfRange


class Direction(enum.Enum):
    MINIMIZE = 'minimize'
    MAXIMIZE = 'maximize'

    @classmethod
    def parse(cls, text: str) -> 'Direction':
        name = str(text).strip().lower()
        for direction in cls:
            if name in (direction.value, direction.value[:3]):
                return direction
        raise InvalidConfiguration(f"Unknown direction '{text}'")


def read_only(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.flags.writeable = False
    return array


class ProblemSpec:
    def __init__(self, **kwargs):
        self.dimension = int(kwargs.get("dimension") or 0)
        self.lower = np.broadcast_to(np.asarray(kwargs.get("lower"), dtype=float), (self.dimension,)).copy()
        self.upper = np.broadcast_to(np.asarray(kwargs.get("upper"), dtype=float), (self.dimension,)).copy()
        self.direction = kwargs.get("direction") or Direction.MINIMIZE

        if self.dimension < 1:
            raise InvalidConfiguration(f"Dimension must be at least 1, got {self.dimension}")
        if not np.all(self.lower < self.upper):
            raise InvalidConfiguration("Every lower bound must be strictly below its upper bound")
        self.lower.flags.writeable = False
        self.upper.flags.writeable = False

    def __str__(self):
        return f"ProblemSpec(D={self.dimension}, {self.direction.value})"

    def clip(self, values: np.ndarray, indices=None) -> np.ndarray:
        if indices is None:
            return np.clip(values, self.lower, self.upper)
        return np.clip(values, self.lower[indices], self.upper[indices])

    def contains(self, values: np.ndarray) -> bool:
        return bool(np.all(values >= self.lower) and np.all(values <= self.upper))


class FullSolution:
    """
    A D-dimensional point plus the objective value of exactly these values, if known.
    Values are read-only; assigning new values drops the cached value.
    """

    def __init__(self, values, cached_value: Optional[float] = None):
        self._values = read_only(values)
        self.cached_value = cached_value

    def __str__(self):
        return f"FullSolution(D={len(self._values)}, value={self.cached_value})"

    @property
    def values(self) -> np.ndarray:
        return self._values

    @values.setter
    def values(self, values):
        self._values = read_only(values)
        self.cached_value = None

    @property
    def dimension(self) -> int:
        return len(self._values)

    def copy(self) -> 'FullSolution':
        return FullSolution(self._values, self.cached_value)


class PartialSolution:
    def __init__(self, indices, values):
        self.indices = np.array(indices, dtype=np.intp)
        self.values = read_only(values)
        self.indices.flags.writeable = False
        if self.indices.ndim != 1 or self.values.shape != self.indices.shape:
            raise InvalidConfiguration("Partial solution values must align with its indices")
        if len(np.unique(self.indices)) != len(self.indices):
            raise OverlapOrGapError("Partial solution indices must be distinct")

    def __len__(self):
        return len(self.indices)

    def __str__(self):
        return f"PartialSolution(indices={self.indices.tolist()})"


class Grouping:
    """Partition of {0..D-1} into M ordered, disjoint index groups"""

    def __init__(self, groups, dimension: Optional[int] = None):
        self.groups = [np.array(group, dtype=np.intp) for group in groups]
        if not self.groups:
            raise InvalidGroupCount("A grouping needs at least one group")

        joined = np.concatenate(self.groups)
        self.dimension = dimension if dimension is not None else len(joined)
        if len(joined) and (joined.min() < 0 or joined.max() >= self.dimension):
            raise IndexOutOfRange(f"Grouping indices must lie in 0..{self.dimension - 1}")
        if len(joined) != self.dimension or len(np.unique(joined)) != self.dimension:
            raise OverlapOrGapError("Groups must be disjoint and cover every dimension exactly once")

        self._complements = []
        for i in range(len(self.groups)):
            rest = [group for k, group in enumerate(self.groups) if k != i]
            self._complements.append(np.sort(np.concatenate(rest)) if rest else np.array([], dtype=np.intp))

    def __len__(self):
        return len(self.groups)

    def __iter__(self):
        return iter(self.groups)

    def __getitem__(self, i):
        return self.groups[i]

    def complement(self, i: int) -> np.ndarray:
        return self._complements[i]

    @property
    def sizes(self) -> List[int]:
        return [len(group) for group in self.groups]


class ConvergenceTrace:
    """
    Best-so-far value against FEs consumed.
    A point is kept at every multiple of log_every; close() adds the final FE.
    """

    def __init__(self, direction: Direction = Direction.MINIMIZE, log_every: int = 1):
        if log_every < 1:
            raise InvalidConfiguration(f"log_every must be at least 1, got {log_every}")
        self.direction = direction
        self.log_every = int(log_every)
        self.points: List[Tuple[int, float]] = []
        self.best_value: Optional[float] = None
        self.consumed = 0
        self.iterations = 0

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def observe(self, fe: int, value: float):
        if self.best_value is None or _at_least_as_good(value, self.best_value, self.direction):
            self.best_value = value
        self.consumed = fe
        if fe % self.log_every == 0:
            self.points.append((fe, self.best_value))

    def close(self):
        if self.best_value is not None and (not self.points or self.points[-1][0] != self.consumed):
            self.points.append((self.consumed, self.best_value))
        return self

    @property
    def fes(self) -> np.ndarray:
        return np.array([point[0] for point in self.points], dtype=np.int64)

    @property
    def values(self) -> np.ndarray:
        return np.array([point[1] for point in self.points], dtype=float)


def _at_least_as_good(a: float, b: float, direction: Direction) -> bool:
    return a >= b if direction == Direction.MAXIMIZE else a <= b


class EvalCounter:
    """FE meter with a hard budget; also remembers the best point it has paid for"""

    def __init__(self, budget: int, trace: Optional[ConvergenceTrace] = None):
        if int(budget) < 1:
            raise InvalidConfiguration(f"Budget must be positive, got {budget}")
        self.budget = int(budget)
        self.consumed = 0
        self.trace = trace if trace is not None else ConvergenceTrace()
        self.best: Optional[FullSolution] = None

    def __str__(self):
        return f"EvalCounter({self.consumed}/{self.budget})"

    def charge(self, solution: FullSolution, value: float):
        self.consumed += 1
        if self.best is None or (value != self.best.cached_value
                                 and _at_least_as_good(value, self.best.cached_value, self.trace.direction)):
            self.best = FullSolution(solution.values, value)
        self.trace.observe(self.consumed, value)


class Population:
    def __init__(self, **kwargs):
        self.rows: List[FullSolution] = list(kwargs.get("rows") or [])
        self.grouping: Optional[Grouping] = kwargs.get("grouping")
        groups = kwargs.get("groups")
        if groups is None:
            groups = len(self.grouping) if self.grouping else 1
        self.step_sizes = np.full((len(self.rows), int(groups)), float(kwargs.get("sigma_init", 1.0)))
        if not self.rows:
            raise InvalidConfiguration("A population needs at least one row")
        if int(groups) < 1:
            raise InvalidGroupCount(f"M must be at least 1, got {groups}")

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, j) -> FullSolution:
        return self.rows[j]


class DacConfig:
    def __init__(self, **kwargs):
        self.population_size = int(kwargs.get("population_size", 2))
        self.groups = int(kwargs.get("groups", 10))
        self.budget = int(kwargs.get("budget", 0))
        self.direction = kwargs.get("direction", Direction.MINIMIZE)
        self.regroup_each_iteration = kwargs.get("regroup_each_iteration", True)
        self.seed = int(kwargs.get("seed", 0))
        self.max_iterations = kwargs.get("max_iterations")
        self.use_cache = kwargs.get("use_cache", True)
        self.log_every = int(kwargs.get("log_every", 1))
        self.sigma_init = float(kwargs.get("sigma_init", 1.0))

        if self.population_size < 1:
            raise InvalidConfiguration(f"N must be at least 1, got {self.population_size}")
        if self.groups < 1:
            raise InvalidGroupCount(f"M must be at least 1, got {self.groups}")
        if self.budget < self.population_size:
            raise InvalidConfiguration(f"Budget {self.budget} cannot pay for {self.population_size} initial FEs")
        if self.log_every < 1:
            raise InvalidConfiguration(f"log_every must be at least 1, got {self.log_every}")
        if not self.sigma_init > 0:
            raise InvalidConfiguration(f"sigma_init must be positive, got {self.sigma_init}")
        if self.max_iterations is not None and self.max_iterations < 0:
            raise InvalidConfiguration(f"max_iterations cannot be negative, got {self.max_iterations}")

    def __str__(self):
        return f"DacConfig(N={self.population_size}, M={self.groups}, budget={self.budget})"

    def validate_for(self, spec: ProblemSpec):
        if self.groups > spec.dimension:
            raise InvalidGroupCount(f"M={self.groups} exceeds D={spec.dimension}")
        if spec.direction != self.direction:
            raise InvalidConfiguration("Config and problem disagree on the optimization direction")


class ComplementPolicy(enum.Enum):
    CROSS_ROW = 'cross-row'
    OWN_ROW = 'own-row'


@dataclass
class ComplementChoice:
    row_index: int
    value: float
    fresh_evals: int
    complement: PartialSolution


@dataclass(frozen=True)
class StepEvent:
    iteration: int
    group: int
    row: int
    before: float
    after: float


@dataclass
class GridSpec:
    points: List[np.ndarray]
    cap: int = 1000000

    def __post_init__(self):
        self.points = [np.asarray(axis, dtype=float) for axis in self.points]
        for axis in self.points:
            if len(axis) < 2 or not np.all(np.isfinite(axis)):
                raise InvalidConfiguration("Every grid dimension needs at least 2 finite points")

    @property
    def size(self) -> int:
        return math.prod(len(axis) for axis in self.points)

    @property
    def dimension(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class InteractionWitness:
    base: np.ndarray
    i: int
    j: int
    x_i: float
    x_i_prime: float
    x_j: float
    x_j_prime: float
    values: Tuple[float, float, float, float]  # f(xi,xj), f(xi',xj), f(xi,xj'), f(xi',xj')


@dataclass(frozen=True)
class ProbabilityReport:
    probabilities: Tuple[float, ...]
    product: float
    mean: float
    bound: float


@dataclass(frozen=True)
class FitResult:
    slope: float
    r_squared: float
    degenerate: bool = False
    truncated: bool = False
    points: int = 0


@dataclass
class ExternalObjectiveConfig:
    command: List[str]
    dimension: int
    direction: Direction = Direction.MINIMIZE
    handshake_timeout: float = 10.0
    eval_timeout: Optional[float] = None

    def __post_init__(self):
        if not self.command:
            raise InvalidConfiguration("External objective needs a command")
        if self.dimension < 1:
            raise InvalidConfiguration(f"Dimension must be at least 1, got {self.dimension}")


class Algorithm(enum.Enum):
    DAC_HC = 'dac-hc'
    PHC = 'phc'
    DAC_GENERIC = 'dac'
    GRID = 'grid'


@dataclass
class ExperimentConfig:
    algorithms: List[Algorithm]
    function_id: str
    dimension: int
    group_size: int
    population_size: int
    groups: int
    budget: int
    runs: int
    base_seed: int
    output: str
    log_every: int = 1
    lower: float = -100.0
    upper: float = 100.0
    sigma_init: float = 1.0
    external: Optional[str] = None
    direction: Direction = Direction.MINIMIZE
    grid_points: int = 100
    eval_timeout: Optional[float] = None

    def __post_init__(self):
        if self.runs < 1:
            raise InvalidConfiguration(f"runs must be at least 1, got {self.runs}")
        if self.log_every < 1:
            raise InvalidConfiguration(f"log_every must be at least 1, got {self.log_every}")
        if not self.algorithms:
            raise InvalidConfiguration("At least one algorithm is required")
        if self.dimension < 1:
            raise InvalidConfiguration(f"D must be at least 1, got {self.dimension}")
        if self.population_size < 1:
            raise InvalidConfiguration(f"N must be at least 1, got {self.population_size}")
        if not 1 <= self.groups <= self.dimension:
            raise InvalidGroupCount(f"Need 1 <= M <= D, got M={self.groups}, D={self.dimension}")
        if self.budget < self.population_size:
            raise InvalidConfiguration(f"Budget {self.budget} cannot pay for {self.population_size} initial FEs")
        if not self.lower < self.upper:
            raise InvalidConfiguration(f"Lower bound {self.lower} must lie below upper bound {self.upper}")
        if not self.sigma_init > 0:
            raise InvalidConfiguration(f"sigma_init must be positive, got {self.sigma_init}")
        if self.grid_points < 1:
            raise InvalidConfiguration(f"grid_points must be at least 1, got {self.grid_points}")
        if self.eval_timeout is not None and not self.eval_timeout > 0:
            raise InvalidConfiguration(f"eval_timeout must be positive, got {self.eval_timeout}")


@dataclass
class RunRecord:
    algorithm: Algorithm
    run_index: int
    seed: int
    final_value: Optional[float] = None
    consumed: int = 0
    wall_time: float = 0.0
    trace_path: Optional[str] = None
    status: str = 'ok'
    error: Optional[str] = None


@dataclass
class SummaryRow:
    algorithm: Algorithm
    function_id: str
    dimension: int
    group_size: int
    population_size: int
    groups: int
    budget: int
    runs: int
    mean: Optional[float]
    std: Optional[float]


@dataclass
class SummaryTable:
    rows: List[SummaryRow] = field(default_factory=list)
