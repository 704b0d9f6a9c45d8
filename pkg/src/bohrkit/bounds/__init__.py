"""Closed-form Bohr-radius bounds."""

from bohrkit.bounds.dispatch import FORMULA_IDS, FormulaRequest, application_bounds, evaluate_formula
from bohrkit.bounds.formulas import (
    contraction_factor,
    eval_cor14,
    eval_sandwich,
    eval_thm11_family,
    eval_thm12,
    eval_thm12_upper,
    eval_thm13_psi,
    eval_thm13a,
    lemma33_prefactors,
)

__all__ = [
    "FORMULA_IDS",
    "FormulaRequest",
    "application_bounds",
    "contraction_factor",
    "eval_cor14",
    "eval_sandwich",
    "eval_thm11_family",
    "eval_thm12",
    "eval_thm12_upper",
    "eval_thm13_psi",
    "eval_thm13a",
    "evaluate_formula",
    "lemma33_prefactors",
]
