# dacopt
# Copyright (C) 2026  dacopt developers

import hashlib

import numpy as np

# Fixed repo-wide. Changing it changes every trace.
GENERATOR_ALGORITHM = 'PCG64'


def label_key(label: str) -> int:
    digest = hashlib.sha256(label.encode('utf-8')).digest()
    return int.from_bytes(digest[:4], 'little')


class RngStream:
    """
    Deterministic random stream over numpy's PCG64.

    Sub-streams are derived from (base_seed, label, index) through SeedSequence
    spawn keys, so the instance stream and each run's search stream never overlap.
    """

    def __init__(self, seed: int, spawn_key: tuple = ()):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.spawn_key = tuple(spawn_key)
        self._sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=self.spawn_key)
        self.generator = np.random.Generator(np.random.PCG64(self._sequence))

    def __repr__(self):
        return f"RngStream(seed={self.seed}, spawn_key={self.spawn_key}, algorithm={GENERATOR_ALGORITHM})"

    def derive(self, label: str, index: int = 0) -> 'RngStream':
        return RngStream(self.seed, self.spawn_key + (label_key(label), int(index)))

    def uniform(self, low, high, size=None):
        return self.generator.uniform(low, high, size)

    def normal(self, scale: float = 1.0, size=None):
        return self.generator.normal(0.0, scale, size)

    def permutation(self, n: int) -> np.ndarray:
        return self.generator.permutation(n)

    def integers(self, low: int, high: int, size=None):
        return self.generator.integers(low, high, size)


def derive_stream(base_seed: int, label: str, index: int = 0) -> RngStream:
    return RngStream(base_seed).derive(label, index)


def derive_seed(base_seed: int, label: str, index: int = 0) -> int:
    """A concrete 64-bit seed for sub-stream (base_seed, label, index), for logging and records"""
    sequence = np.random.SeedSequence(entropy=int(base_seed) & 0xFFFFFFFFFFFFFFFF,
                                      spawn_key=(label_key(label), int(index)))
    return int(sequence.generate_state(1, np.uint64)[0])
