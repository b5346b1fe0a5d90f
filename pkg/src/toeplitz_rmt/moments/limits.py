"""Exact limiting even moments from per-pairing lattice-count polynomials."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from ..ensemble import DistributionSpec, moment_of
from .counting import lattice_count
from .pairings import Pairing, crossing_class, double_factorial, enumerate_pairings

# 2k = 10 needs 945 pairings with a 6-dimensional count each; opt-in only
HEAVY_TWO_K = 10


class NonPolynomialCountError(RuntimeError):
    """A count failed held-out validation as both a polynomial and an even/odd quasi-polynomial."""


class CostGuardError(RuntimeError):
    """The requested computation exceeds the default cost budget."""


def interpolate(points) -> tuple[Fraction, ...]:
    """Exact power-basis coefficients (constant first) of the polynomial through ``points``."""
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    newton = [table[0]]
    for level in range(1, len(xs)):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(len(table) - 1)]
        newton.append(table[0])
    # Horner on the Newton form: p = c0 + (x - x0)(c1 + (x - x1)(c2 + ...))
    coeffs = [newton[-1]]
    for c, x0 in zip(reversed(newton[:-1]), reversed(xs[:-1])):
        shifted = [Fraction(0)] + coeffs
        for i, a in enumerate(coeffs):
            shifted[i] -= x0 * a
        shifted[0] += c
        coeffs = shifted
    return tuple(coeffs)


def evaluate(coeffs, x) -> Fraction:
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


@dataclass(frozen=True)
class ContributionPolynomial:
    """Count polynomial of one pairing in ``L``.

    ``branches`` holds one coefficient tuple (constant term first) per residue
    of ``L`` modulo ``period``.
    """

    pairing: Pairing
    branches: tuple[tuple[Fraction, ...], ...]
    period: int = 1

    @property
    def degree(self) -> int:
        return self.pairing.k + 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self.branches[0]

    @property
    def contribution(self) -> Fraction:
        return self.branches[0][-1]

    def __call__(self, L: int) -> Fraction:
        return evaluate(self.branches[L % self.period], L)


def fit_contribution(pairing: Pairing, l_min: int | None = None) -> ContributionPolynomial:
    """Fit the exact count polynomial of ``pairing`` and validate it at a held-out ``L``.

    Counts at ``k + 2`` consecutive ``L >= 2k + 2`` determine a degree ``k + 1``
    polynomial; one more ``L`` checks it.  On mismatch, even and odd ``L``
    are fitted separately and must share a leading coefficient.
    """
    k = pairing.k
    degree = k + 1
    start = 2 * k + 2 if l_min is None else l_min
    Ls = list(range(start, start + degree + 2))
    counts = {L: lattice_count(pairing, L) for L in Ls}
    coeffs = interpolate([(L, counts[L]) for L in Ls[:-1]])
    if evaluate(coeffs, Ls[-1]) == counts[Ls[-1]]:
        return ContributionPolynomial(pairing, (coeffs,), 1)

    branches = []
    for residue in (0, 1):
        sub = [L for L in range(start, start + 2 * (degree + 2) + 2) if L % 2 == residue][: degree + 2]
        for L in sub:
            if L not in counts:
                counts[L] = lattice_count(pairing, L)
        branch = interpolate([(L, counts[L]) for L in sub[:-1]])
        if evaluate(branch, sub[-1]) != counts[sub[-1]]:
            raise NonPolynomialCountError(f"count for {pairing.partner} is not a (quasi-)polynomial in L")
        branches.append(branch)
    if branches[0][-1] != branches[1][-1]:
        raise NonPolynomialCountError(f"even/odd leading coefficients disagree for {pairing.partner}")
    return ContributionPolynomial(pairing, tuple(branches), 2)


@dataclass(frozen=True)
class PairingContribution:
    pairing: Pairing
    contribution: Fraction
    crossing: int


@dataclass(frozen=True)
class LimitMomentReport:
    two_k: int
    value: Fraction
    gaussian: int
    per_pairing: tuple[PairingContribution, ...]

    @property
    def ratio(self) -> float:
        return float(self.value / self.gaussian)

    def to_dict(self) -> dict:
        return {
            "two_k": self.two_k,
            "value": _frac(self.value),
            "gaussian": self.gaussian,
            "pairings": [
                {"partner": list(p.pairing.partner), "crossing": p.crossing, "contribution": _frac(p.contribution)}
                for p in self.per_pairing
            ],
        }


def _frac(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _leading(pairing: Pairing) -> Fraction:
    return fit_contribution(pairing).contribution


def limit_moment(
    two_k: int,
    allow_heavy: bool = False,
    use_symmetry: bool = True,
    workers: int = 1,
) -> LimitMomentReport:
    """Exact ``lim M_{2k}(N)`` as the sum of per-pairing contributions.

    With ``use_symmetry`` each rotation/reflection class is counted once; the
    counts are identical across a class, so this changes cost only.
    Odd orders return 0.
    """
    if two_k < 1:
        raise ValueError("moment order must be positive")
    if two_k % 2:
        return LimitMomentReport(two_k, Fraction(0), 0, ())
    if two_k > HEAVY_TWO_K:
        raise CostGuardError(f"2k={two_k} beyond supported maximum {HEAVY_TWO_K}")
    if two_k == HEAVY_TWO_K and not allow_heavy:
        raise CostGuardError(f"2k={two_k} requires allow_heavy")
    k = two_k // 2
    pairings = enumerate_pairings(k)
    keys = [p.canonical() if use_symmetry else p for p in pairings]
    unique = list(dict.fromkeys(keys))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_leading, unique))
    else:
        values = [_leading(p) for p in unique]
    by_key = dict(zip(unique, values))
    per_pairing = tuple(PairingContribution(p, by_key[key], crossing_class(p)) for p, key in zip(pairings, keys))
    total = sum((c.contribution for c in per_pairing), Fraction(0))
    return LimitMomentReport(two_k, total, double_factorial(two_k - 1), per_pairing)


def finite_n_formula(two_k: int, n: int, dist: DistributionSpec) -> float:
    """Reference finite-N moment expressions ``1 - 1/n`` and ``8/3 + 2(p4-1)/n + 1/n^2``.

    The second-moment expression is exact.  The fourth-moment one omits
    boundary terms of order ``1/n``; use :func:`exact_expected_moment` for the
    true expectation.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if two_k == 2:
        return 1.0 - 1.0 / n
    if two_k == 4:
        p4 = float(moment_of(dist, 4))
        return 8.0 / 3.0 + 2.0 * (p4 - 1.0) / n + 1.0 / n**2
    raise ValueError(f"no finite-N closed form for 2k={two_k}")


def exact_expected_moment(two_k: int, n: int, dist: DistributionSpec) -> Fraction:
    """Exact ``E[M_{2k}(A, n)]`` with zero diagonal, for ``2k`` in ``{2, 4}``.

    Sums over every index tuple of the trace expansion, including the
    boundary and repeated-diagonal terms:
    ``n^3 M_4 = a(n) + p4 b(n)`` with ``a = 8n^3/3 - 10n^2 + 28n/3 - 2[n odd]``
    and ``b = 2n^2 - 3n + [n odd]``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if two_k == 2:
        return Fraction(n * n - n, n * n)
    if two_k == 4:
        p4 = moment_of(dist, 4)
        odd = n % 2
        a = Fraction(8 * n**3 - 30 * n**2 + 28 * n, 3) - 2 * odd
        b = 2 * n * n - 3 * n + odd
        return (a + p4 * b) / n**3
    raise ValueError(f"no exact finite-N form for 2k={two_k}")
