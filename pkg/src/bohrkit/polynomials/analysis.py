"""Sup norms and majorant sums of polynomials over Reinhardt domains."""

from __future__ import annotations

import math

import numpy as np

from bohrkit.core.ascent import gaussian_moduli_proposal, multistart_ascent, phased_proposal
from bohrkit.exceptions import DimensionMismatchError, ParameterError
from bohrkit.logger import log
from bohrkit.models.config import SamplingBudget
from bohrkit.models.result import SupEstimate
from bohrkit.polynomials.coefficients import BoundedOperatorU, batch_operator_norm
from bohrkit.polynomials.multi_index import MultiIndex, monomial_table
from bohrkit.polynomials.poly import KnownSupNorm, PluriharmonicPoly
from bohrkit.spaces.descriptor import SpaceDescriptor
from bohrkit.spaces.norms import basis_norms, raw_norm_batch


def monomial_sup_on_lq(alpha: MultiIndex, space: SpaceDescriptor) -> float:
    """sup |z^α| over scale·B_{ℓ_q}: scale^{|α|}·(α^α/|α|^{|α|})^{1/q}."""
    if space.kind != "lq":
        raise ParameterError("space", str(space), "closed-form monomial norms need an ℓ_q ball")
    return space.scale**alpha.degree / alpha.rho(space.q)


def first_coordinate_radius(space: SpaceDescriptor, j: int = 0) -> float:
    """sup |z_j| over the domain."""
    return space.scale / float(basis_norms(space.unit())[j])


def known_norm_applies(known: KnownSupNorm, space: SpaceDescriptor) -> bool:
    """True when the known value was computed for the same domain."""
    if known.space.same_norm(space) and math.isclose(known.space.scale, space.scale, rel_tol=1e-12):
        return True
    # In one variable every domain is a disc
    if space.dim == 1 and known.space.dim == 1:
        return math.isclose(first_coordinate_radius(known.space), first_coordinate_radius(space), rel_tol=1e-12)
    return False


def _unit_sphere_projection(space: SpaceDescriptor, dim: int):
    """Map moduli rows onto the boundary of the domain (norm exactly 1)."""

    def project(a: np.ndarray) -> np.ndarray:
        a = np.abs(a)
        norms = raw_norm_batch(space, a) / space.scale
        dead = norms <= 0
        if np.any(dead):
            a[dead] = 1.0
            norms[dead] = raw_norm_batch(space, a[dead]) / space.scale
        return a / norms[:, None]

    return project


def _structured_moduli(dim: int) -> list[np.ndarray]:
    return [np.ones(dim)] + [np.eye(dim)[j] for j in range(dim)]


def sup_norm(
    f: PluriharmonicPoly,
    space: SpaceDescriptor,
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> SupEstimate:
    """sup_{z∈Ω} ‖f(z)‖: exact when known or closed-form, else a sampled lower estimate."""
    if space.dim != f.dim:
        raise DimensionMismatchError(f.dim, space.dim, "space")
    if f.is_zero:
        return SupEstimate.exact(0.0, "zero")
    if f.known_sup_norm is not None and known_norm_applies(f.known_sup_norm, space):
        return SupEstimate.exact(f.known_sup_norm.value, "known")
    if f.max_degree == 0:
        return SupEstimate.exact(f.constant_term.operator_norm(), "constant")
    single = _single_term(f)
    if single is not None and space.kind == "lq":
        alpha, coeff = single
        return SupEstimate.exact(coeff.operator_norm() * monomial_sup_on_lq(alpha, space), "monomial")

    budget = budget or SamplingBudget()
    rng = np.random.default_rng(seed)
    n = f.dim
    project_moduli = _unit_sphere_projection(space, n)

    def project(x: np.ndarray) -> np.ndarray:
        out = x.copy()
        out[:, :n] = project_moduli(x[:, :n])
        return out

    def objective(x: np.ndarray) -> np.ndarray:
        z = x[:, :n] * np.exp(1j * x[:, n:])
        return batch_operator_norm(f.evaluate_batch(z))

    structured = [np.concatenate([a, np.zeros(n)]) for a in _structured_moduli(n)]
    pool = np.hstack([rng.random((budget.candidates, n)), rng.uniform(0, 2 * np.pi, (budget.candidates, n))])
    pool = project(pool)
    keep = max(budget.starts - len(structured), 1)
    best_pool = pool[np.argsort(-objective(pool))[:keep]]
    starts = np.vstack([np.array(structured), best_pool])

    result = multistart_ascent(
        objective, project, starts, phased_proposal(n),
        iterations=budget.iterations, step=budget.step, rng=rng, polish=budget.polish,
    )
    if not result.converged:
        log.warning("sup_norm of %s on %s did not stabilize; best %s", f.function_id, space, result.value)
    return SupEstimate(
        value=result.value, certified=False, uncertainty=result.spread,
        converged=result.converged, method="ascent",
    )


def _single_term(f: PluriharmonicPoly):
    terms = list(f.terms())
    if len(terms) != 1:
        return None
    _, alpha, coeff = terms[0]
    return alpha, coeff


def estimate_majorant(
    f: PluriharmonicPoly,
    U: BoundedOperatorU,
    space: SpaceDescriptor,
    r: float,
    p: float,
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> SupEstimate:
    """sup over z ∈ r·Ω of Σ (‖U a_α‖^p + ‖U b_α‖^p)·|z^α|^p.

    The sum increases in every |z_i|, so only the nonnegative part of the
    boundary of r·Ω is searched. On the polydisc the corner (r,…,r) is the
    maximizer; a polynomial in one variable z_j peaks where |z_j| is largest.
    """
    if space.dim != f.dim:
        raise DimensionMismatchError(f.dim, space.dim, "space")
    if not 0 <= r <= 1:
        raise ParameterError("r", r, "must lie in [0, 1]")
    if not p >= 1:
        raise ParameterError("p", p, "must be ≥ 1")
    if f.is_zero:
        return SupEstimate.exact(0.0, "zero")

    exps, a_stack, b_stack = f.dense_union
    weights = U.image_norms(a_stack) ** p + U.image_norms(b_stack) ** p

    def total(moduli: np.ndarray) -> np.ndarray:
        return (monomial_table(moduli, exps) ** p) @ weights

    n = f.dim
    if r == 0:
        return SupEstimate.exact(float(total(np.zeros((1, n)))[0]), "origin")
    # Closed-form series majorant, valid for p = 1 and U = λ₀·I on the domain of the known norm
    if (
        p == 1
        and f.majorant_oracle is not None
        and U.kind == "identity_scaled"
        and f.known_sup_norm is not None
        and known_norm_applies(f.known_sup_norm, space)
    ):
        return SupEstimate.exact(U.scale * f.majorant_oracle(r), "oracle")
    if space.is_polydisc:
        return SupEstimate.exact(float(total(np.full((1, n), r * space.scale))[0]), "corner")
    support = f.support()
    if len(support) <= 1:
        j = next(iter(support), 0)
        point = np.zeros((1, n))
        point[0, j] = r * first_coordinate_radius(space, j)
        return SupEstimate.exact(float(total(point)[0]), "axis")

    budget = budget or SamplingBudget()
    rng = np.random.default_rng(seed)
    project = _unit_sphere_projection(space, n)

    def objective(a: np.ndarray) -> np.ndarray:
        return total(r * a)

    extra = max(budget.starts - n - 1, 1)
    starts = np.vstack(_structured_moduli(n) + [rng.random((extra, n))])
    result = multistart_ascent(
        objective, project, starts, gaussian_moduli_proposal,
        iterations=budget.iterations, step=budget.step, rng=rng, polish=budget.polish,
    )
    return SupEstimate(
        value=result.value, certified=False, uncertainty=result.spread,
        converged=result.converged, method="ascent",
    )


def majorant_sum(
    f: PluriharmonicPoly,
    U: BoundedOperatorU,
    space: SpaceDescriptor,
    r: float,
    p: float,
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> float:
    return estimate_majorant(f, U, space, r, p, budget, seed).value
