"""Seeded generation of random real symmetric Toeplitz matrices.

Each matrix is determined by its first row ``b_0, b_1, ..., b_{n-1}`` with
``A[i, j] = b_{|i-j|}``.  The off-diagonal values are i.i.d. draws from a
standardized (mean 0, variance 1) distribution; the diagonal ``b_0`` is zero
unless requested otherwise, since a constant diagonal only shifts the
spectrum.

Randomness for trial ``t`` of a configuration is derived from
``(master_seed, t)`` alone, so trials can be generated in any order or in
parallel and still reproduce bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

KINDS = ("gaussian", "rademacher", "uniform-sym")
_ALIASES = {"normal": "gaussian", "uniform": "uniform-sym", "sign": "rademacher"}

MAX_MOMENT = 8


class UnsupportedMomentError(ValueError):
    """Raised when a moment beyond the closed-form table is requested."""


@dataclass(frozen=True)
class DistributionSpec:
    """A standardized entry distribution.

    ``uniform-sym`` is uniform on ``[-sqrt(3), sqrt(3)]``.
    """

    kind: str = "gaussian"

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)

    def moment(self, a: int) -> Fraction:
        return moment_of(self, a)

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "gaussian":
            return rng.standard_normal(size)
        if self.kind == "rademacher":
            return rng.integers(0, 2, size=size).astype(np.float64) * 2.0 - 1.0
        root3 = math.sqrt(3.0)
        return rng.uniform(-root3, root3, size=size)


def moment_of(dist: DistributionSpec, a: int) -> Fraction:
    """Exact ``a``-th moment ``E[X^a]`` of a standardized entry distribution.

    Odd moments vanish for all supported kinds (they are symmetric).

    Raises
    ------
    UnsupportedMomentError
        If ``a`` is outside ``0..8``.
    """
    if not 0 <= a <= MAX_MOMENT:
        raise UnsupportedMomentError(f"moment order {a} outside supported range 0..{MAX_MOMENT}")
    if a % 2:
        return Fraction(0)
    if dist.kind == "gaussian":
        # (a-1)!!
        out = 1
        for j in range(a - 1, 0, -2):
            out *= j
        return Fraction(out)
    if dist.kind == "rademacher":
        return Fraction(1)
    # uniform on [-sqrt3, sqrt3]: 3^(a/2) / (a+1)
    return Fraction(3 ** (a // 2), a + 1)


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    dist: DistributionSpec = DistributionSpec()
    master_seed: int = 0
    zero_diagonal: bool = True

    def __post_init__(self):
        if isinstance(self.dist, str):
            object.__setattr__(self, "dist", DistributionSpec(self.dist))
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"matrix dimension must be an integer >= 2, got {self.n!r}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class ToeplitzSample:
    """First row of a symmetric Toeplitz matrix: ``b0`` on the diagonal, ``b[d-1]`` on diagonal ``d``."""

    n: int
    b: np.ndarray
    b0: float = 0.0

    def __post_init__(self):
        b = np.asarray(self.b, dtype=np.float64)
        if b.shape != (self.n - 1,):
            raise ValueError(f"expected {self.n - 1} off-diagonal values, got shape {b.shape}")
        object.__setattr__(self, "b", b)

    @property
    def first_row(self) -> np.ndarray:
        return np.concatenate(([self.b0], self.b))

    def matrix(self) -> np.ndarray:
        row = self.first_row
        idx = np.abs(np.subtract.outer(np.arange(self.n), np.arange(self.n)))
        return row[idx]


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Counter-based generator for one trial; independent of every other trial index."""
    if trial < 0:
        raise ValueError("trial index must be nonnegative")
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(trial,))
    return np.random.Generator(np.random.Philox(seq))


def sample(config: EnsembleConfig, trial: int) -> ToeplitzSample:
    """Draw trial ``trial`` of ``config``; a pure function of its arguments."""
    rng = trial_rng(config.master_seed, trial)
    b = config.dist.draw(rng, config.n - 1)
    b0 = 0.0 if config.zero_diagonal else float(config.dist.draw(rng, 1)[0])
    return ToeplitzSample(config.n, b, b0)
