"""Test-function families: disc automorphisms, lifts, monomials and random draws."""

from __future__ import annotations

import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

from bohrkit.core.utils import child_rng
from bohrkit.exceptions import GuardrailError, NoClosedFormError, ParameterError
from bohrkit.logger import log
from bohrkit.models.config import Guardrails, SamplingBudget
from bohrkit.polynomials.analysis import first_coordinate_radius, monomial_sup_on_lq, sup_norm
from bohrkit.polynomials.coefficients import CoeffValue
from bohrkit.polynomials.multi_index import MultiIndex, indices_up_to
from bohrkit.polynomials.poly import KnownSupNorm, PluriharmonicPoly
from bohrkit.spaces.descriptor import SpaceDescriptor
from bohrkit.spaces.invariants import dual_ones_norm

TAIL_TOLERANCE = 1e-12
DEFAULT_A_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)


def mobius_tail_bound(a: float, degree: int) -> float:
    """Σ_{k>K} (1−a²)a^{k−1} = (1+a)·a^K."""
    return (1 + a) * a**degree


def mobius_truncation_degree(a: float) -> int:
    """Smallest K with tail bound below the truncation tolerance."""
    return max(1, math.ceil(math.log(TAIL_TOLERANCE / (1 + a)) / math.log(a)))


def mobius_majorant(a: float, r: float) -> float:
    """Closed-form Σ|c_k| r^k = a + (1−a²)r/(1−ar) for φ_a(z) = (a − z)/(1 − az)."""
    return a + (1 - a * a) * r / (1 - a * r)


def _mobius_coefficients(a: float, degree: int, n: int, j: int) -> dict[MultiIndex, CoeffValue]:
    coeffs = {MultiIndex.zero(n): CoeffValue.scalar(a)}
    for k in range(1, degree + 1):
        entries = [0] * n
        entries[j] = k
        coeffs[MultiIndex(tuple(entries))] = CoeffValue.scalar(-(1 - a * a) * a ** (k - 1))
    return coeffs


def _check_a(a: float) -> None:
    if not 0 < a < 1:
        raise ParameterError("a", a, "must lie in (0, 1)")


def _resolve_degree(a: float, truncation_degree: int | None) -> int:
    if truncation_degree is None:
        return mobius_truncation_degree(a)
    if mobius_tail_bound(a, truncation_degree) >= TAIL_TOLERANCE:
        raise ParameterError(
            "truncation_degree", truncation_degree,
            f"tail (1+a)a^K must be < {TAIL_TOLERANCE}; need K ≥ {mobius_truncation_degree(a)}",
        )
    return truncation_degree


def mobius_family(a: float, truncation_degree: int | None = None) -> PluriharmonicPoly:
    """Truncated φ_a(z) = (a − z)/(1 − az) on the unit disc, ‖φ_a‖ = 1."""
    _check_a(a)
    degree = _resolve_degree(a, truncation_degree)
    return PluriharmonicPoly(
        1,
        _mobius_coefficients(a, degree, 1, 0),
        label=f"mobius[a={a:g}]",
        known_sup_norm=KnownSupNorm(1.0, SpaceDescriptor.polydisc(1)),
        majorant_oracle=lambda r: mobius_majorant(a, r),
    )


def coordinate_lift(
    a: float,
    space: SpaceDescriptor,
    j: int = 0,
    truncation_degree: int | None = None,
) -> PluriharmonicPoly:
    """φ_a(z_j) on the variables of `space`.

    With R = sup |z_j| ≤ 1 over the domain, the sup norm is |φ_a| on the
    circle of radius R, namely (a + R)/(1 + aR).
    """
    _check_a(a)
    degree = _resolve_degree(a, truncation_degree)
    radius = first_coordinate_radius(space, j)
    known = None
    if radius <= 1 + 1e-12:
        known = KnownSupNorm((a + radius) / (1 + a * radius), space)
    else:
        log.warning("Lift of φ_%s on %s: sup |z_%d| = %s > 1, norm left to sampling", a, space, j + 1, radius)
    return PluriharmonicPoly(
        space.dim,
        _mobius_coefficients(a, degree, space.dim, j),
        label=f"lift[a={a:g},j={j + 1}]",
        known_sup_norm=known,
        majorant_oracle=lambda r: mobius_majorant(a, r * radius),
    )


def monomial(
    alpha: MultiIndex,
    coeff: CoeffValue | complex = 1.0,
    space: SpaceDescriptor | None = None,
) -> PluriharmonicPoly:
    """c·z^α, with its closed-form sup norm attached on ℓ_q balls."""
    value = coeff if isinstance(coeff, CoeffValue) else CoeffValue.scalar(coeff)
    known = None
    if space is not None and space.kind == "lq":
        known = KnownSupNorm(value.operator_norm() * monomial_sup_on_lq(alpha, space), space)
    return PluriharmonicPoly(alpha.dim, {alpha: value}, label=f"monomial[{alpha}]", known_sup_norm=known)


def linear_form(space: SpaceDescriptor) -> PluriharmonicPoly:
    """z₁ + … + z_n, whose sup norm over the domain is the dual-ones norm."""
    n = space.dim
    coeffs = {MultiIndex.unit(n, j): CoeffValue.scalar(1.0) for j in range(n)}
    try:
        known = KnownSupNorm(dual_ones_norm(space, method="closed_form"), space)
    except NoClosedFormError:
        known = None
    return PluriharmonicPoly(n, coeffs, label="linear[sum]", known_sup_norm=known)


def necessity_member(k: int, dim: int = 1, matrix_k: int = 1, space: SpaceDescriptor | None = None) -> PluriharmonicPoly:
    """F_k(z) = i·cos(1/k)·I + ½·sin(1/k)·I·z₁ + ½·sin(1/k)·I·z̄₁.

    F_k = i·cos(1/k) + sin(1/k)·Re(z₁), so its sup norm is
    √(cos²(1/k) + sin²(1/k)·R²) with R = sup |z₁|.
    """
    if k < 1:
        raise ParameterError("k", k, "must be ≥ 1")
    c, s = math.cos(1 / k), math.sin(1 / k)
    eye = CoeffValue.identity(matrix_k)
    unit = MultiIndex.unit(dim, 0)
    space = space or SpaceDescriptor.polydisc(dim)
    radius = first_coordinate_radius(space)
    return PluriharmonicPoly(
        dim,
        {MultiIndex.zero(dim): eye * 1j * c, unit: eye * (s / 2)},
        {unit: eye * (s / 2)},
        label=f"necessity[k={k}]",
        known_sup_norm=KnownSupNorm(math.sqrt(c * c + s * s * radius * radius), space),
    )


def headline_family(space: SpaceDescriptor, a_grid: tuple[float, ...] = DEFAULT_A_GRID) -> list[PluriharmonicPoly]:
    """Certified-norm members: Möbius maps (n=1), lifts and closed-form monomials (n>1)."""
    if space.dim == 1 and math.isclose(first_coordinate_radius(space), 1.0):
        return [mobius_family(a) for a in a_grid]
    family = [coordinate_lift(a, space) for a in a_grid]
    if space.kind == "lq":
        n = space.dim
        family.append(monomial(MultiIndex.of(*([1, 1] + [0] * (n - 2))), space=space))
        if n > 2:
            family.append(monomial(MultiIndex.of(*([1] * n)), space=space))
    return [f for f in family if f.known_sup_norm is not None]


class RandomFamilySpec(BaseModel):
    """Shape of a seeded random family."""

    n: int = Field(ge=1)
    max_degree: int = Field(ge=0)
    coeff_kind: Literal["scalar", "matrix"] = "scalar"
    k: int = Field(default=2, ge=1)
    count: int = Field(default=10, ge=0)
    include_antiholomorphic: bool = True
    density: float = Field(default=0.6, gt=0, le=1)
    decay: float = Field(default=0.5, gt=0)
    override: bool = False


def _check_guardrails(spec: RandomFamilySpec, guardrails: Guardrails) -> None:
    if spec.override:
        return
    if spec.n > guardrails.max_vars:
        raise GuardrailError("n", spec.n, guardrails.max_vars)
    if spec.max_degree > guardrails.max_degree:
        raise GuardrailError("max_degree", spec.max_degree, guardrails.max_degree)
    if spec.coeff_kind == "matrix" and spec.k > guardrails.max_matrix_k:
        raise GuardrailError("k", spec.k, guardrails.max_matrix_k)


def _draw(rng: np.random.Generator, spec: RandomFamilySpec, degree: int) -> CoeffValue:
    magnitude = spec.decay**degree / math.sqrt(2)
    if spec.coeff_kind == "scalar":
        return CoeffValue.scalar(magnitude * complex(rng.standard_normal(), rng.standard_normal()))
    shape = (spec.k, spec.k)
    return CoeffValue.matrix(magnitude * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)))


def random_family(
    spec: RandomFamilySpec,
    seed: int,
    space: SpaceDescriptor | None = None,
    budget: SamplingBudget | None = None,
    guardrails: Guardrails | None = None,
) -> list[PluriharmonicPoly]:
    """Seeded random polynomials normalized so their estimated sup norm is 1."""
    _check_guardrails(spec, guardrails or Guardrails())
    space = space or SpaceDescriptor.polydisc(spec.n)
    if space.dim != spec.n:
        raise ParameterError("space", str(space), f"must have dimension {spec.n}")

    indices = list(indices_up_to(spec.n, spec.max_degree))
    family = []
    for i in range(spec.count):
        rng = child_rng(seed, i)
        a, b = {}, {}
        for alpha in indices:
            if rng.random() < spec.density:
                a[alpha] = _draw(rng, spec, alpha.degree)
            if spec.include_antiholomorphic and alpha.degree > 0 and rng.random() < spec.density:
                b[alpha] = _draw(rng, spec, alpha.degree)
        if not a and not b:
            a[indices[0]] = _draw(rng, spec, 0)
        is_scalar = spec.coeff_kind == "scalar"
        f = PluriharmonicPoly(spec.n, a, b, label=f"random[seed={seed},i={i}]", k=1 if is_scalar else spec.k, is_scalar=is_scalar)
        estimate = sup_norm(f, space, budget, seed=int(rng.integers(2**31)))
        if estimate.value > 0:
            f = f.scaled(1.0 / estimate.value)
        family.append(f)
    log.debug("Drew %d random polynomials (seed=%s, n=%d, degree≤%d)", len(family), seed, spec.n, spec.max_degree)
    return family
