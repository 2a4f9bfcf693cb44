# dacopt
# Copyright (C) 2026  dacopt developers

import enum
import threading
from typing import List, Optional, Tuple

import numpy as np

from app.core.errors import DimensionMismatch, IncompatibleDimensions, NonFiniteValue, UsageError
from app.core.rng import derive_stream
from app.core.settings import Settings, SettingsOptions
from app.data.models import Direction, ProblemSpec
from app.objectives.functions import rosenbrock, schwefel12, sphere


class FunctionId(enum.Enum):
    F1 = 'f1'
    F2 = 'f2'
    F3 = 'f3'
    F4 = 'f4'
    F5 = 'f5'
    SPHERE = 'sphere'
    SCHWEFEL12 = 'schwefel12'
    ROSENBROCK = 'rosenbrock'

    @classmethod
    def parse(cls, text: str) -> 'FunctionId':
        name = str(text).strip().lower()
        for function_id in cls:
            if function_id.value == name:
                return function_id
        raise UsageError(f"Unknown function '{text}'")


class BlockKind:
    SCHWEFEL = 'sch'
    SPHERE = 'sph'
    ROSENBROCK = 'ros'


BLOCK_FUNCTIONS = {
    BlockKind.SCHWEFEL: schwefel12,
    BlockKind.SPHERE: sphere,
    BlockKind.ROSENBROCK: rosenbrock,
}

# (kind, start, stop, scale) over the permuted shifted vector
Block = Tuple[str, int, int, float]


def table_blocks(function_id: FunctionId, dimension: int, group_size: int) -> List[Block]:
    d, m = dimension, group_size
    if m < 1:
        raise IncompatibleDimensions(f"Group size must be positive, got m={m}")

    if function_id == FunctionId.F1:
        if d < m:
            raise IncompatibleDimensions(f"F1 needs D >= m, got D={d}, m={m}")
        return [(BlockKind.SCHWEFEL, 0, m, 1e6), (BlockKind.SPHERE, m, d, 1.0)]
    if function_id == FunctionId.F2:
        if d % 2 or (d // 2) % m:
            raise IncompatibleDimensions(f"F2 needs D even and D/2 divisible by m, got D={d}, m={m}")
        blocks = [(BlockKind.SCHWEFEL, k * m, (k + 1) * m, 1.0) for k in range(d // (2 * m))]
        return blocks + [(BlockKind.SPHERE, d // 2, d, 1.0)]
    if function_id in (FunctionId.F3, FunctionId.F5):
        if d % m:
            raise IncompatibleDimensions(f"{function_id.name} needs D divisible by m, got D={d}, m={m}")
        kind = BlockKind.SCHWEFEL if function_id == FunctionId.F3 else BlockKind.ROSENBROCK
        if kind == BlockKind.ROSENBROCK and m < 2:
            raise IncompatibleDimensions("Rosenbrock blocks need m >= 2")
        return [(kind, k * m, (k + 1) * m, 1.0) for k in range(d // m)]
    if function_id in (FunctionId.F4, FunctionId.SCHWEFEL12):
        return [(BlockKind.SCHWEFEL, 0, d, 1.0)]
    if function_id == FunctionId.SPHERE:
        return [(BlockKind.SPHERE, 0, d, 1.0)]
    if d < 2:
        raise IncompatibleDimensions("Rosenbrock needs D >= 2")
    return [(BlockKind.ROSENBROCK, 0, d, 1.0)]


class BenchmarkInstance:
    """
    One shifted, permuted benchmark function. Immutable once built and callable
    as an objective; each thread gets its own scratch buffer.

    Blocks are contiguous slices of z gathered in `order`: the random permutation P
    for F1-F3 and F5, the identity for F4 and the plain functions.
    """

    def __init__(self, **kwargs):
        self.function_id: FunctionId = kwargs.get("function_id")
        self.dimension = int(kwargs.get("dimension"))
        self.group_size = int(kwargs.get("group_size"))
        self.shift = np.array(kwargs.get("shift"), dtype=float)
        self.permutation = np.array(kwargs.get("permutation"), dtype=np.intp)
        self.instance_seed = int(kwargs.get("instance_seed") or 0)
        self.lower = float(kwargs.get("lower"))
        self.upper = float(kwargs.get("upper"))
        self.blocks = table_blocks(self.function_id, self.dimension, self.group_size)

        if self.function_id in (FunctionId.F1, FunctionId.F2, FunctionId.F3, FunctionId.F5):
            self.order = self.permutation.copy()
        else:
            self.order = np.arange(self.dimension, dtype=np.intp)
        self.ordered_shift = self.shift[self.order]

        for array in (self.shift, self.permutation, self.order, self.ordered_shift):
            array.flags.writeable = False
        self._scratch = threading.local()

        if sorted(self.permutation.tolist()) != list(range(self.dimension)):
            raise IncompatibleDimensions("Permutation must contain every index exactly once")
        optimum = self.optimum
        if np.any(optimum < self.lower) or np.any(optimum > self.upper):
            raise IncompatibleDimensions("Global optimum falls outside the bounds")

    def __str__(self):
        return f"{self.function_id.name}(D={self.dimension}, m={self.group_size}, seed={self.instance_seed})"

    def __call__(self, x) -> float:
        return BenchmarkRepository.evaluate(self, x)

    @property
    def rosenbrock_coordinates(self) -> np.ndarray:
        indices = [self.order[start:stop] for kind, start, stop, _ in self.blocks if kind == BlockKind.ROSENBROCK]
        return np.concatenate(indices) if indices else np.array([], dtype=np.intp)

    @property
    def optimum(self) -> np.ndarray:
        """x* = o, plus one on every Rosenbrock coordinate"""
        optimum = self.shift.copy()
        optimum[self.rosenbrock_coordinates] += 1.0
        return optimum

    def problem_spec(self) -> ProblemSpec:
        return ProblemSpec(dimension=self.dimension, lower=self.lower, upper=self.upper,
                           direction=Direction.MINIMIZE)

    def scratch(self) -> np.ndarray:
        buffer = getattr(self._scratch, 'buffer', None)
        if buffer is None:
            buffer = np.empty(self.dimension)
            self._scratch.buffer = buffer
        return buffer


class BenchmarkRepository:
    @classmethod
    def make_instance(
            cls,
            function_id: FunctionId,
            dimension: int,
            group_size: int,
            instance_seed: int,
            bounds: Optional[Tuple[float, float]] = None,
            shift_range: Optional[Tuple[float, float]] = None,
    ) -> BenchmarkInstance:
        lower, upper = bounds or (Settings.get_value(SettingsOptions.LOWER_BOUND),
                                  Settings.get_value(SettingsOptions.UPPER_BOUND))
        shift_low, shift_high = shift_range or (Settings.get_value(SettingsOptions.SHIFT_LOW),
                                                Settings.get_value(SettingsOptions.SHIFT_HIGH))
        if dimension < 1:
            raise IncompatibleDimensions(f"Dimension must be positive, got {dimension}")
        blocks = table_blocks(function_id, dimension, group_size)

        # shift first, then permutation; both only depend on the seed
        stream = derive_stream(instance_seed, 'instance')
        shift = stream.uniform(shift_low, shift_high, dimension)
        permutation = stream.permutation(dimension)

        if any(kind == BlockKind.ROSENBROCK for kind, _, _, _ in blocks):
            shift = np.minimum(shift, shift_high - 1.0)

        return BenchmarkInstance(
            function_id=function_id,
            dimension=dimension,
            group_size=group_size,
            shift=shift,
            permutation=permutation,
            instance_seed=instance_seed,
            lower=lower,
            upper=upper,
        )

    @classmethod
    def evaluate(cls, instance: BenchmarkInstance, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (instance.dimension,):
            raise DimensionMismatch(f"Expected {instance.dimension} values, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise NonFiniteValue("Input vector contains non-finite entries")

        z = instance.scratch()
        np.take(x, instance.order, out=z)
        np.subtract(z, instance.ordered_shift, out=z)

        total = 0.0
        for kind, start, stop, scale in instance.blocks:
            if stop > start:
                total += BLOCK_FUNCTIONS[kind](z[start:stop]) * scale
        return total

    @classmethod
    def group_values(cls, instance: BenchmarkInstance, x) -> List[float]:
        """Per-block contributions, evaluated block by block"""
        x = np.asarray(x, dtype=float)
        z = x[instance.order] - instance.ordered_shift
        return [BLOCK_FUNCTIONS[kind](z[start:stop]) * scale
                for kind, start, stop, scale in instance.blocks if stop > start]
