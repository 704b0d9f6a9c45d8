"""Sequence-space norms and the invariants the bound formulas consume."""

from bohrkit.spaces.descriptor import OrliczFunction, SpaceDescriptor
from bohrkit.spaces.invariants import (
    domain_scaling,
    dual_ones_estimate,
    dual_ones_norm,
    embed_norm,
    embed_norm_estimate,
    identity_lp_norm,
    sup_pnorm_on_ball,
)
from bohrkit.spaces.norms import (
    basis_norms,
    check_unconditionality,
    contains,
    minkowski_functional,
    norm,
    ones_norm,
    orlicz_inverse,
    raw_norm_batch,
)

__all__ = [
    "OrliczFunction",
    "SpaceDescriptor",
    "basis_norms",
    "check_unconditionality",
    "contains",
    "domain_scaling",
    "dual_ones_estimate",
    "dual_ones_norm",
    "embed_norm",
    "embed_norm_estimate",
    "identity_lp_norm",
    "minkowski_functional",
    "norm",
    "ones_norm",
    "orlicz_inverse",
    "raw_norm_batch",
    "sup_pnorm_on_ball",
]
