# dacopt
# Copyright (C) 2026  dacopt developers

import numpy as np

from app.core.errors import DimensionTooSmall, NonFiniteValue


def _checked(z, minimum: int = 1) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if z.ndim != 1 or len(z) < minimum:
        raise DimensionTooSmall(f"Expected a vector of at least {minimum} entries, got shape {z.shape}")
    if not np.all(np.isfinite(z)):
        raise NonFiniteValue("Input vector contains non-finite entries")
    return z


def sphere(z) -> float:
    z = _checked(z)
    return float(np.dot(z, z))


def schwefel12(z) -> float:
    # prefix sums keep this O(D)
    prefix = np.cumsum(_checked(z))
    return float(np.dot(prefix, prefix))


def rosenbrock(z) -> float:
    z = _checked(z, minimum=2)
    head = z[:-1]
    return float(np.sum(100.0 * (head * head - z[1:]) ** 2 + (head - 1.0) ** 2))
