"""Exact limiting moments via pairings and lattice counting."""

from .counting import AuditRow, count_obstruction_triples, lattice_count, sign_audit
from .limits import (
    ContributionPolynomial,
    CostGuardError,
    LimitMomentReport,
    NonPolynomialCountError,
    PairingContribution,
    exact_expected_moment,
    finite_n_formula,
    fit_contribution,
    interpolate,
    limit_moment,
)
from .pairings import Pairing, crossing_class, double_factorial, enumerate_pairings

__all__ = [
    "AuditRow",
    "ContributionPolynomial",
    "CostGuardError",
    "LimitMomentReport",
    "NonPolynomialCountError",
    "Pairing",
    "PairingContribution",
    "count_obstruction_triples",
    "crossing_class",
    "double_factorial",
    "enumerate_pairings",
    "exact_expected_moment",
    "finite_n_formula",
    "fit_contribution",
    "interpolate",
    "lattice_count",
    "limit_moment",
    "sign_audit",
]
