"""Monte Carlo moments, convergence diagnostics and eigenvalue-spacing statistics.

Every estimate is computed trial by trial from seeded samples, so results do
not depend on how trials are split across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from .ensemble import EnsembleConfig, sample
from .linalg import batch_eigenvalues

CHUNK = 64
HIST_WIDTH = 0.1
HIST_MAX = 5.0


@dataclass(frozen=True)
class MomentEstimate:
    k: int
    trials: int
    mean: float
    stderr: float
    n: int

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CentralMomentEstimate:
    k: int
    order: int
    n: int
    value: float
    trials: int

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SpacingSample:
    gaps: np.ndarray
    window: int
    matrices: int


@dataclass(frozen=True)
class FitReport:
    ks_poisson: float
    ks_goe: float
    edges: np.ndarray
    counts: np.ndarray
    size: int

    @property
    def density(self) -> np.ndarray:
        return self.counts / (self.size * np.diff(self.edges))

    def to_dict(self) -> dict:
        return {
            "ks_poisson": self.ks_poisson,
            "ks_goe": self.ks_goe,
            "gaps": self.size,
            "bin_width": float(self.edges[1] - self.edges[0]),
            "bin_range": [float(self.edges[0]), float(self.edges[-1])],
        }

    def histogram_rows(self) -> list[tuple[float, float, int, float]]:
        return [
            (float(lo), float(hi), int(c), float(d))
            for lo, hi, c, d in zip(self.edges[:-1], self.edges[1:], self.counts, self.density)
        ]


def _spectra_chunk(args) -> np.ndarray:
    config, start, stop = args
    rows = np.stack([sample(config, t).first_row for t in range(start, stop)])
    return batch_eigenvalues(rows)


def _map_spectra(config: EnsembleConfig, trials: int, reduce: Callable, workers: int = 1) -> np.ndarray:
    """Apply ``reduce`` to the eigenvalue block of each chunk of trials, in trial order."""
    tasks = [(config, s, min(s + CHUNK, trials)) for s in range(0, trials, CHUNK)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = pool.map(_spectra_chunk, tasks)
            return np.concatenate([reduce(b) for b in blocks])
    return np.concatenate([reduce(_spectra_chunk(t)) for t in tasks])


def moment_samples(config: EnsembleConfig, ks: Sequence[int], trials: int, workers: int = 1) -> np.ndarray:
    """``M_k(A, N)`` for every trial and every ``k``; shape ``(trials, len(ks))``."""
    ks = list(ks)
    if any(not 0 <= k <= 12 for k in ks):
        raise ValueError("moment orders must lie in 0..12")
    n = config.n

    def reduce(ev):
        return np.stack([np.sum(ev**k, axis=1) / n ** (k / 2 + 1) for k in ks], axis=1)

    return _map_spectra(config, trials, reduce, workers)


def _estimate(values: np.ndarray, k: int, n: int) -> MomentEstimate:
    trials = values.size
    return MomentEstimate(k, trials, float(values.mean()), float(values.std(ddof=1) / math.sqrt(trials)), n)


def empirical_moments(
    config: EnsembleConfig, ks: Sequence[int], trials: int, workers: int = 1
) -> list[MomentEstimate]:
    if trials < 2:
        raise ValueError("need at least 2 trials")
    values = moment_samples(config, ks, trials, workers)
    return [_estimate(values[:, j], k, config.n) for j, k in enumerate(ks)]


def empirical_moment(config: EnsembleConfig, k: int, trials: int, workers: int = 1) -> MomentEstimate:
    """Mean and standard error of ``M_k(A, N)`` over ``trials`` seeded samples."""
    return empirical_moments(config, [k], trials, workers)[0]


def central_moment_from(values: np.ndarray, order: int) -> float:
    centred = values - values.mean()
    return float(np.mean(np.abs(centred) ** order))


def central_moment(
    config: EnsembleConfig, k: int, order: int, trials: int, workers: int = 1
) -> CentralMomentEstimate:
    """Plug-in estimate of ``E|M_k(A,N) - E M_k(A,N)|^order`` for ``order`` in ``{2, 4}``."""
    if order not in (2, 4):
        raise ValueError("order must be 2 or 4")
    if trials < 100:
        raise ValueError("central moments need at least 100 trials")
    values = moment_samples(config, [k], trials, workers)[:, 0]
    return CentralMomentEstimate(k, order, config.n, central_moment_from(values, order), trials)


def central_window(n: int, window: int) -> slice:
    start = n // 2 - window // 2
    return slice(start, start + window)


def spacing_sample(
    config: EnsembleConfig, matrices: int, window: int, workers: int = 1, strict: bool = True
) -> SpacingSample:
    """Adjacent gaps of the ``window`` central normalized eigenvalues, pooled and scaled to mean 1.

    ``strict`` enforces an odd window with ``3 <= window <= n/10``; without it
    any ``2 <= window <= n`` is accepted.
    """
    n = config.n
    if matrices < 1:
        raise ValueError("need at least one matrix")
    if strict:
        if window % 2 == 0 or window < 3:
            raise ValueError("window must be odd and at least 3")
        if window > n / 10:
            raise ValueError(f"window {window} too large for n={n} (limit n/10)")
    elif not 2 <= window <= n:
        raise ValueError(f"window {window} outside 2..{n}")
    sl = central_window(n, window)

    def reduce(ev):
        return np.diff(ev[:, sl] / math.sqrt(n), axis=1)

    gaps = _map_spectra(config, matrices, reduce, workers).ravel()
    mean = gaps.mean()
    if not mean > 0:
        raise ValueError("degenerate spectrum: mean gap is zero")
    return SpacingSample(gaps / mean, window, matrices)


def poisson_cdf(s):
    return 1.0 - np.exp(-np.asarray(s, dtype=np.float64))


def goe_cdf(s):
    """Wigner surmise ``(pi/2) s exp(-pi s^2/4)`` integrated."""
    s = np.asarray(s, dtype=np.float64)
    return 1.0 - np.exp(-np.pi * s**2 / 4.0)


MODELS = {"poisson": poisson_cdf, "goe": goe_cdf}


def _as_gaps(x) -> np.ndarray:
    return x.gaps if isinstance(x, SpacingSample) else np.asarray(x, dtype=np.float64)


def ks_statistic(sample, model) -> float:
    """Kolmogorov-Smirnov distance between the gaps' empirical CDF and ``model``.

    ``model`` is ``"poisson"``, ``"goe"``, a vectorized continuous CDF, or
    another sample (then the two empirical CDFs are compared).
    """
    gaps = _as_gaps(sample)
    if gaps.size == 0:
        raise ValueError("empty sample")
    x = np.sort(gaps)
    m = x.size
    if isinstance(model, (SpacingSample, np.ndarray, list, tuple)):
        other = np.sort(_as_gaps(model))
        grid = np.concatenate((x, other))
        fx = np.searchsorted(x, grid, side="right") / m
        fo = np.searchsorted(other, grid, side="right") / other.size
        return float(np.max(np.abs(fx - fo)))
    cdf = MODELS[model] if isinstance(model, str) else model
    f = cdf(x)
    upper = np.arange(1, m + 1) / m - f
    lower = f - np.arange(0, m) / m
    return float(max(upper.max(), lower.max(), 0.0))


def fit_report(sample: SpacingSample, width: float = HIST_WIDTH, upper: float = HIST_MAX) -> FitReport:
    edges = np.linspace(0.0, upper, int(round(upper / width)) + 1)
    counts, _ = np.histogram(sample.gaps, bins=edges)
    return FitReport(
        ks_statistic(sample, "poisson"), ks_statistic(sample, "goe"), edges, counts, int(sample.gaps.size)
    )
