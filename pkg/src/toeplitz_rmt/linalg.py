"""Eigenvalues, trace powers and a fast matrix-vector product for symmetric Toeplitz matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .ensemble import ToeplitzSample

MAX_TRACE_POWER = 12
# above this dimension trace_power switches from dense matrix powers to eigenvalue power sums
DENSE_POWER_LIMIT = 512


@dataclass(frozen=True)
class Spectrum:
    n: int
    values: np.ndarray

    @property
    def normalized(self) -> np.ndarray:
        return self.values / np.sqrt(self.n)

    def power_sum(self, k: int) -> float:
        return float(np.sum(self.values**k))


def _check_finite(sample: ToeplitzSample):
    if not (np.all(np.isfinite(sample.b)) and np.isfinite(sample.b0)):
        raise ValueError("Toeplitz sample contains non-finite entries")


def eigenvalues(sample: ToeplitzSample) -> Spectrum:
    """All eigenvalues of the sample's matrix, ascending.

    Uses LAPACK's symmetric driver (Householder tridiagonalization followed by
    a tridiagonal eigensolver), which is backward stable.
    """
    _check_finite(sample)
    values = scipy.linalg.eigvalsh(sample.matrix(), check_finite=False)
    return Spectrum(sample.n, values)


def batch_eigenvalues(first_rows: np.ndarray) -> np.ndarray:
    """Eigenvalues for a stack of first rows, shape ``(m, n)`` -> ``(m, n)``."""
    rows = np.asarray(first_rows, dtype=np.float64)
    if not np.all(np.isfinite(rows)):
        raise ValueError("Toeplitz sample contains non-finite entries")
    n = rows.shape[-1]
    idx = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
    return np.linalg.eigvalsh(rows[:, idx])


def trace_power(sample: ToeplitzSample, k: int) -> float:
    """``Trace(A^k)`` for ``1 <= k <= 12``."""
    if not 1 <= k <= MAX_TRACE_POWER:
        raise ValueError(f"trace power k={k} outside 1..{MAX_TRACE_POWER}")
    _check_finite(sample)
    if sample.n > DENSE_POWER_LIMIT:
        return eigenvalues(sample).power_sum(k)
    a = sample.matrix()
    if k == 1:
        return float(np.trace(a))
    # Trace(A^k) = <A^h, A^(k-h)> with h = k // 2
    half = np.linalg.matrix_power(a, k // 2)
    other = half if k % 2 == 0 else half @ a
    return float(np.sum(half * other))


def toeplitz_matvec(sample: ToeplitzSample, v) -> np.ndarray:
    """``A @ v`` in O(n log n) by embedding A in a 2n-point circulant.

    The circulant's first column is ``[b_0, b_1, ..., b_{n-1}, 0, b_{n-1}, ..., b_1]``;
    its leading n x n block is A.
    """
    v = np.asarray(v, dtype=np.float64)
    n = sample.n
    if v.shape != (n,):
        raise ValueError(f"vector length {v.shape} does not match matrix dimension {n}")
    row = sample.first_row
    col = np.concatenate((row, [0.0], row[:0:-1]))
    padded = np.concatenate((v, np.zeros(n)))
    out = np.fft.irfft(np.fft.rfft(col) * np.fft.rfft(padded), n=2 * n)
    return out[:n]
