"""Numeric mode, tolerance and seed carried through a computation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import FloatMatrix

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class NumericPolicy:
    mode: str = "exact"
    tol: float = DEFAULT_TOL
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown numeric mode {self.mode!r}")
        if not self.tol >= 0:
            raise ValueError("tolerance must be nonnegative")

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def convert(self, m):
        """Bring a matrix onto this policy's backend."""
        if self.exact:
            if isinstance(m, FloatMatrix):
                raise TypeError("float matrix given to an exact computation")
            return m
        return m.to_float(self.tol)

    def rng(self, *stream: int) -> np.random.Generator:
        """Independent generator for a named substream of the root seed."""
        return np.random.default_rng([self.seed, *stream])


EXACT = NumericPolicy()
