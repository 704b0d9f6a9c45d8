"""Space-level invariants: identity norms, dual-ones norms and domain scalings."""

from __future__ import annotations

import math
from typing import Literal

import numpy as np

from bohrkit.core.ascent import gaussian_moduli_proposal, multistart_ascent
from bohrkit.core.utils import reciprocal
from bohrkit.exceptions import DimensionMismatchError, NoClosedFormError, ParameterError
from bohrkit.logger import log
from bohrkit.models.config import SamplingBudget
from bohrkit.models.result import NormEstimate
from bohrkit.spaces.descriptor import SpaceDescriptor
from bohrkit.spaces.norms import basis_norms, ones_norm, raw_norm_batch

Method = Literal["closed_form", "numeric", "auto"]


def identity_lp_norm(s: float, t: float, n: int) -> float:
    """‖Id: ℓⁿ_s → ℓⁿ_t‖ = 1 for s ≤ t, else n^{1/t − 1/s}."""
    if s <= t:
        return 1.0
    return float(n ** (reciprocal(t) - reciprocal(s)))


def _blocks(space: SpaceDescriptor, m: int, n_inner: int) -> tuple[float, float] | None:
    """(outer, inner) exponents of space seen as ℓ^m(ℓ^n_inner), if it factors that way."""
    if space.kind == "mixed":
        if (space.m, space.n_inner) == (m, n_inner):
            return space.s, space.t
        return None
    exponent = space.lp_exponent
    if exponent is None:
        return None
    return exponent, exponent


def _is_convex(space: SpaceDescriptor) -> bool:
    """Lorentz spaces with t > s are only quasi-normed."""
    return not (space.kind == "lorentz" and space.t > space.s)


def _dual_ones_raw(space: SpaceDescriptor) -> float | None:
    """Closed form for sup{Σ z_k : ‖z‖ ≤ 1} on the unscaled ball."""
    n = space.dim
    if space.kind == "lq":
        return float(n ** (1 - reciprocal(space.q)))
    if space.kind == "mixed":
        return float(space.m ** (1 - reciprocal(space.s)) * space.n_inner ** (1 - reciprocal(space.t)))
    if space.kind == "lorentz":
        # Symmetric convex norm: the maximizer is constant and ‖Σe_k‖ = n^{1/s}
        if space.t <= space.s:
            return float(n ** (1 - reciprocal(space.s)))
        return None
    return n * space.psi.inverse(1.0 / n)


def _closed_form_raw(source: SpaceDescriptor, target: SpaceDescriptor) -> float | None:
    n = source.dim
    if source.same_norm(target):
        return 1.0

    s_exp, t_exp = source.lp_exponent, target.lp_exponent
    if s_exp is not None and t_exp is not None:
        return identity_lp_norm(s_exp, t_exp, n)

    # ‖Id: ℓ^m_s(ℓ^n_t) → ℓ^m_l(ℓ^n_r)‖ factorizes over the two levels
    mixed = source if source.kind == "mixed" else target if target.kind == "mixed" else None
    if mixed is not None:
        outer_s = _blocks(source, mixed.m, mixed.n_inner)
        outer_t = _blocks(target, mixed.m, mixed.n_inner)
        if outer_s is not None and outer_t is not None:
            return identity_lp_norm(outer_s[0], outer_t[0], mixed.m) * identity_lp_norm(outer_s[1], outer_t[1], mixed.n_inner)

    # Corner identities valid for every lattice norm
    if s_exp == 1 and _is_convex(target):
        return float(np.max(basis_norms(target)))
    if t_exp is not None and math.isinf(t_exp):
        return float(np.max(1.0 / basis_norms(source)))
    if s_exp is not None and math.isinf(s_exp):
        return ones_norm(target)
    if t_exp == 1 and _is_convex(source):
        return _dual_ones_raw(source)
    return None


def _structured_starts(source: SpaceDescriptor, target: SpaceDescriptor) -> list[np.ndarray]:
    """Candidates that are exact maximizers for the closed-form families."""
    n = source.dim
    starts = []
    j = 1
    while j <= n:
        flat = np.zeros(n)
        flat[:j] = 1.0
        starts.append(flat)
        j = j * 2 if j * 2 <= n or j == n else n
    for space in (source, target):
        if space.kind == "mixed":
            m, k = space.m, space.n_inner
            first_block = np.zeros((m, k))
            first_block[0, :] = 1.0
            first_each = np.zeros((m, k))
            first_each[:, 0] = 1.0
            starts.extend([first_block.ravel(), first_each.ravel()])
    return starts


def _numeric_raw(
    source: SpaceDescriptor,
    target: SpaceDescriptor,
    budget: SamplingBudget,
    seed: int,
) -> NormEstimate:
    """Maximize ‖a‖_target on the nonnegative part of the source unit sphere."""
    rng = np.random.default_rng(seed)
    structured = _structured_starts(source, target)
    extra = max(budget.starts - len(structured), 0)
    starts = np.vstack(structured + [rng.random((extra, source.dim))]) if extra else np.vstack(structured)

    def project(a: np.ndarray) -> np.ndarray:
        a = np.abs(a)
        norms = raw_norm_batch(source, a)
        dead = norms <= 0
        if np.any(dead):
            a[dead] = 1.0
            norms[dead] = raw_norm_batch(source, a[dead])
        return a / norms[:, None]

    def objective(a: np.ndarray) -> np.ndarray:
        return raw_norm_batch(target, a) / raw_norm_batch(source, a)

    result = multistart_ascent(
        objective, project, starts, gaussian_moduli_proposal,
        iterations=budget.iterations, step=budget.step, rng=rng, polish=budget.polish,
    )
    return NormEstimate(value=result.value, method="numeric", converged=result.converged, argmax=result.argmax.tolist())


def embed_norm_estimate(
    source: SpaceDescriptor,
    target: SpaceDescriptor,
    method: Method = "auto",
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> NormEstimate:
    """sup_{z≠0} ‖z‖_target / ‖z‖_source with scales applied, plus provenance."""
    if source.dim != target.dim:
        raise DimensionMismatchError(source.dim, target.dim, "target space")
    ratio = source.scale / target.scale

    if method in ("closed_form", "auto"):
        raw = _closed_form_raw(source, target)
        if raw is not None:
            return NormEstimate(value=raw * ratio, method="closed_form")
        if method == "closed_form":
            raise NoClosedFormError(str(source), str(target))
    elif method != "numeric":
        raise ParameterError("method", method, "must be closed_form, numeric or auto")

    estimate = _numeric_raw(source.unit(), target.unit(), budget or SamplingBudget(), seed)
    if not estimate.converged:
        log.warning("Embedding %s -> %s did not converge; best value %s", source, target, estimate.value)
    estimate.value *= ratio
    return estimate


def embed_norm(
    source: SpaceDescriptor,
    target: SpaceDescriptor,
    method: Method = "auto",
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> float:
    """‖Id: source → target‖."""
    return embed_norm_estimate(source, target, method, budget, seed).value


def dual_ones_estimate(
    space: SpaceDescriptor,
    method: Method = "auto",
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> NormEstimate:
    """‖Σ e*_k‖ in the dual, i.e. sup{Σ Re z_k : z in the domain}."""
    return embed_norm_estimate(space, SpaceDescriptor.lq(1, space.dim), method, budget, seed)


def dual_ones_norm(
    space: SpaceDescriptor,
    method: Method = "auto",
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> float:
    return dual_ones_estimate(space, method, budget, seed).value


def sup_pnorm_on_ball(
    space: SpaceDescriptor,
    p: float,
    method: Method = "auto",
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> float:
    """sup of ‖z‖_p over the domain; identical to embed_norm(space, ℓ_p)."""
    if not p >= 1:
        raise ParameterError("p", p, "must be ≥ 1")
    return embed_norm(space, SpaceDescriptor.lq(p, space.dim), method, budget, seed)


def domain_scaling(
    omega1: SpaceDescriptor,
    omega2: SpaceDescriptor,
    method: Method = "auto",
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> float:
    """S(Ω₁, Ω₂) = inf{s > 0 : Ω₁ ⊂ s·Ω₂}; scales are part of both domains."""
    return embed_norm(omega1, omega2, method, budget, seed)
