"""Pluriharmonic polynomials with scalar or matrix coefficients."""

from bohrkit.polynomials.analysis import (
    estimate_majorant,
    first_coordinate_radius,
    majorant_sum,
    monomial_sup_on_lq,
    sup_norm,
)
from bohrkit.polynomials.coefficients import BoundedOperatorU, CoeffValue, operator_norm
from bohrkit.polynomials.families import (
    DEFAULT_A_GRID,
    RandomFamilySpec,
    coordinate_lift,
    headline_family,
    linear_form,
    mobius_family,
    mobius_majorant,
    monomial,
    necessity_member,
    random_family,
)
from bohrkit.polynomials.multi_index import MultiIndex, homogeneous_indices, indices_up_to
from bohrkit.polynomials.poly import KnownSupNorm, PluriharmonicPoly, evaluate, homogeneous_part
from bohrkit.polynomials.serialization import dump_family, dumps, loads, loads_family, read_family

__all__ = [
    "DEFAULT_A_GRID",
    "BoundedOperatorU",
    "CoeffValue",
    "KnownSupNorm",
    "MultiIndex",
    "PluriharmonicPoly",
    "RandomFamilySpec",
    "coordinate_lift",
    "dump_family",
    "dumps",
    "estimate_majorant",
    "evaluate",
    "first_coordinate_radius",
    "headline_family",
    "homogeneous_indices",
    "homogeneous_part",
    "indices_up_to",
    "linear_form",
    "loads",
    "loads_family",
    "majorant_sum",
    "mobius_family",
    "mobius_majorant",
    "monomial",
    "monomial_sup_on_lq",
    "necessity_member",
    "operator_norm",
    "random_family",
    "read_family",
    "sup_norm",
]
