"""Empirical Bohr-radius estimation by bisection over test-function families."""

from __future__ import annotations

from dataclasses import dataclass

from bohrkit.core.executor import FamilyExecutor
from bohrkit.core.utils import split_seed
from bohrkit.exceptions import ParameterError
from bohrkit.logger import log
from bohrkit.models.config import NumericSettings, SamplingBudget
from bohrkit.models.result import FunctionCheck, FunctionMargin, RadiusEstimate, SupEstimate
from bohrkit.polynomials.analysis import estimate_majorant, sup_norm
from bohrkit.polynomials.coefficients import BoundedOperatorU
from bohrkit.polynomials.poly import PluriharmonicPoly
from bohrkit.spaces.descriptor import SpaceDescriptor

FLOAT_SLACK = 1e-12
NO_VIOLATION_NOTE = "no violation in (0, 1]; estimate clamped to 1"
DEGENERATE_NOTE = "degenerate family (all members zero); radius 1 returned"


def check_function_at_r(
    f: PluriharmonicPoly,
    U: BoundedOperatorU,
    space: SpaceDescriptor,
    r: float,
    p: float,
    lam: float,
    budget: SamplingBudget | None = None,
    seed: int = 0,
    sup: SupEstimate | None = None,
) -> FunctionCheck:
    """Test Σ(‖U a_α‖^p + ‖U b_α‖^p)|z^α|^p ≤ λ^p‖f‖^p over r·Ω.

    A violation only counts when the margin is below
    −(p·λ^p·‖f‖^{p−1}·u_f + u_M), with u_f and u_M the sampling spreads of
    the sup norm and the majorant.
    """
    if not lam >= 1:
        raise ParameterError("lambda", lam, "must be ≥ 1")
    sup = sup if sup is not None else sup_norm(f, space, budget, seed)
    majorant = estimate_majorant(f, U, space, r, p, budget, seed)
    rhs = lam**p * sup.value**p
    margin = rhs - majorant.value
    tolerance = (
        p * lam**p * sup.value ** (p - 1) * sup.uncertainty
        + majorant.uncertainty
        + FLOAT_SLACK * max(1.0, rhs)
    )
    return FunctionCheck(
        satisfied=bool(margin >= -tolerance),
        margin=float(margin),
        tolerance=float(tolerance),
        sup_norm=sup.value,
        majorant=majorant.value,
        certified=sup.certified and majorant.certified,
    )


@dataclass
class _MemberOutcome:
    function_id: str
    lo: float
    hi: float
    violated: bool
    certified: bool
    sup: SupEstimate
    seed: int


def _bisect_member(
    f: PluriharmonicPoly,
    U: BoundedOperatorU,
    space: SpaceDescriptor,
    p: float,
    lam: float,
    tol: float,
    budget: SamplingBudget,
    seed: int,
) -> _MemberOutcome:
    sup = sup_norm(f, space, budget, seed)
    if not sup.converged:
        log.warning("sup_norm of %s did not stabilize (value %s)", f.function_id, sup.value)
    certified = sup.certified

    def satisfied(r: float) -> bool:
        nonlocal certified
        check = check_function_at_r(f, U, space, r, p, lam, budget, seed, sup)
        certified = certified and check.certified
        return check.satisfied

    if f.is_zero or satisfied(1.0):
        return _MemberOutcome(f.function_id, 1.0, 1.0, False, certified, sup, seed)
    if not satisfied(0.0):
        log.warning("%s violates the inequality already at r=0", f.function_id)
        return _MemberOutcome(f.function_id, 0.0, 0.0, True, certified, sup, seed)

    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if satisfied(mid):
            lo = mid
        else:
            hi = mid
    log.debug("%s: critical r in [%s, %s]", f.function_id, lo, hi)
    return _MemberOutcome(f.function_id, lo, hi, True, certified, sup, seed)


def estimate_radius(
    space: SpaceDescriptor,
    family: list[PluriharmonicPoly],
    U: BoundedOperatorU | None = None,
    p: float = 1.0,
    lam: float = 1.0,
    tol: float = 1e-4,
    settings: NumericSettings | None = None,
    family_id: str = "custom",
) -> RadiusEstimate:
    """Upper estimate of R_λ(Ω, p, U) restricted to `family`.

    Each member is bisected on its own (members run on the family executor
    with seeds split from the master seed); the family radius is the
    minimum of the member radii, so both brackets are member minima.
    """
    if not family:
        raise ParameterError("family", "[]", "must contain at least one polynomial")
    if not tol > 0:
        raise ParameterError("tol", tol, "must be positive")
    if not p >= 1:
        raise ParameterError("p", p, "must be ≥ 1")
    settings = settings or NumericSettings()
    U = U or BoundedOperatorU.identity()
    if U.norm_U >= lam:
        log.warning("‖U‖=%s ≥ λ=%s: no positive radius is guaranteed", U.norm_U, lam)
    for f in family:
        if f.dim != space.dim:
            raise ParameterError("family", f.function_id, f"has dimension {f.dim}, space has {space.dim}")

    seeds = split_seed(settings.seed, len(family))
    executor = FamilyExecutor(settings)
    budget = settings.sampling
    outcomes = executor.map(
        lambda i, f: _bisect_member(f, U, space, p, lam, tol, budget, seeds[i]),
        family,
    )

    params = {
        "space": str(space), "p": p, "lambda": lam, "U": U.describe(),
        "tol": tol, "seed": settings.seed, "members": len(family),
    }
    fingerprints = [f.fingerprint() for f in family]
    certified = all(o.certified for o in outcomes)
    notes: list[str] = []

    if all(f.is_zero for f in family):
        return RadiusEstimate(1.0, 1.0, family_id, params, [], certified, [DEGENERATE_NOTE], fingerprints)

    lower = min(o.lo for o in outcomes)
    upper = min(o.hi for o in outcomes)
    failed = any(o.violated and o.hi == 0.0 for o in outcomes)
    if not any(o.violated for o in outcomes):
        notes.append(NO_VIOLATION_NOTE)
    if failed:
        notes.append("violation at r=0: sup norm under-estimated or ‖U‖ ≥ λ")
    if not all(o.sup.converged for o in outcomes):
        notes.append("some sup-norm searches did not stabilize")

    margins = executor.map(
        lambda i, f: check_function_at_r(f, U, space, upper, p, lam, budget, outcomes[i].seed, outcomes[i].sup),
        family,
    )
    per_function = [
        FunctionMargin(o.function_id, o.hi, m.margin, o.certified)
        for o, m in zip(outcomes, margins)
    ]
    log.info(
        "Radius estimate on %s (p=%s, λ=%s, %d members): [%s, %s]",
        space, p, lam, len(family), lower, upper,
    )
    return RadiusEstimate(
        lower_bracket=lower,
        upper_bracket=upper,
        family_id=family_id,
        params=params,
        per_function_margins=per_function,
        certified=certified,
        notes=notes,
        member_fingerprints=fingerprints,
        failed=failed,
    )


def estimate_homogeneous_radius(
    space: SpaceDescriptor,
    m: int,
    family: list[PluriharmonicPoly],
    U: BoundedOperatorU | None = None,
    p: float = 1.0,
    lam: float = 1.0,
    tol: float = 1e-4,
    settings: NumericSettings | None = None,
    family_id: str = "homogeneous",
) -> RadiusEstimate:
    """Upper estimate of the m-homogeneous radius Rᵐ_λ.

    For a single certified member the identity Rᵐ_λ = λ^{1/m}·Rᵐ_1 is checked
    against a second estimate at λ = 1 (radii are clamped to 1).
    """
    if m < 1:
        raise ParameterError("m", m, "must be ≥ 1")
    for f in family:
        if not f.is_zero and f.homogeneous_degree != m:
            raise ParameterError("family", f.function_id, f"is not {m}-homogeneous")

    estimate = estimate_radius(space, family, U, p, lam, tol, settings, family_id)
    estimate.params["m"] = m

    if len(family) == 1 and estimate.certified and lam > 1:
        base = estimate_radius(space, family, U, p, 1.0, tol, settings, family_id)
        expected = min(1.0, lam ** (1 / m) * base.upper_bracket)
        deviation = abs(estimate.upper_bracket - expected)
        estimate.params["scaling_expected"] = expected
        if deviation <= 4 * tol:
            estimate.notes.append(f"λ^(1/{m}) scaling verified (deviation {deviation:.3g})")
        else:
            log.warning("λ^(1/m) scaling off by %s for %s", deviation, family[0].function_id)
            estimate.notes.append(f"λ^(1/{m}) scaling deviates by {deviation:.3g} > 4·tol")
    return estimate


def critical_mobius_radius(a: float, lam: float = 1.0) -> float:
    """Exact radius of φ_a for p = 1 and U = I: solves a + (1−a²)r/(1−ar) = λ."""
    if lam >= 1 + 2 * a:
        return 1.0
    return (lam - a) / (1 - 2 * a * a + a * lam)
