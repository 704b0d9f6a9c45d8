"""Empirical radius estimates and inequality verification."""

from bohrkit.estimator.checks import (
    counterexample_scan,
    run_schwarz_pick_suite,
    verify_certified_bounds,
    verify_lemma33_chain,
    verify_monomial_coefficients,
    verify_necessity,
    verify_schwarz_pick,
)
from bohrkit.estimator.radius import (
    check_function_at_r,
    critical_mobius_radius,
    estimate_homogeneous_radius,
    estimate_radius,
)

__all__ = [
    "check_function_at_r",
    "counterexample_scan",
    "critical_mobius_radius",
    "estimate_homogeneous_radius",
    "estimate_radius",
    "run_schwarz_pick_suite",
    "verify_certified_bounds",
    "verify_lemma33_chain",
    "verify_monomial_coefficients",
    "verify_necessity",
    "verify_schwarz_pick",
]
