"""Verification suites for the inequalities behind the radius bounds."""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence

import numpy as np

from bohrkit.bounds.formulas import eval_sandwich, eval_thm11_family, lemma33_prefactors
from bohrkit.core.executor import FamilyExecutor
from bohrkit.core.utils import child_rng
from bohrkit.estimator.radius import check_function_at_r, estimate_radius
from bohrkit.exceptions import ParameterError, SubsetPreconditionError
from bohrkit.logger import log
from bohrkit.models.config import NumericSettings, SamplingBudget
from bohrkit.models.result import BoundPair, BoundReport, CheckReport, NecessityWitness, RadiusEstimate
from bohrkit.polynomials.analysis import first_coordinate_radius, sup_norm
from bohrkit.polynomials.coefficients import BoundedOperatorU, CoeffValue
from bohrkit.polynomials.families import RandomFamilySpec, headline_family, monomial, necessity_member, random_family
from bohrkit.polynomials.multi_index import homogeneous_indices
from bohrkit.polynomials.poly import PluriharmonicPoly
from bohrkit.spaces.descriptor import SpaceDescriptor
from bohrkit.spaces.invariants import embed_norm, sup_pnorm_on_ball

DEFAULT_SCAN_CEILING = 10_000
WITNESS_FRACTION = 0.99
SUITE_BUDGET = SamplingBudget(starts=8, iterations=40, candidates=128, polish=False)


def _worst(entries: list[tuple[float, float]]) -> tuple[float, float]:
    """The (margin, uncertainty) pair closest to failing."""
    if not entries:
        return 0.0, 0.0
    return min(entries, key=lambda e: e[0] + e[1])


# -- homogeneous chain -----------------------------------------------------------


def _check_subset(full_estimate: RadiusEstimate, estimates: Mapping[int, RadiusEstimate]) -> None:
    full = set(full_estimate.member_fingerprints)
    missing = [
        f"m={m}:{fp[:12]}"
        for m, estimate in estimates.items()
        for fp in estimate.member_fingerprints
        if fp not in full
    ]
    if missing:
        raise SubsetPreconditionError(missing)


def verify_lemma33_chain(
    space: SpaceDescriptor,
    full_estimate: RadiusEstimate,
    homogeneous_estimates: Mapping[int, RadiusEstimate],
    p: float,
    lam: float,
    norm_u: float,
    unit_homogeneous_estimates: Mapping[int, RadiusEstimate] | None = None,
) -> CheckReport:
    """Check R_λ ≤ inf_m Rᵐ_λ on nested families and report the lower chain value.

    The upper half holds by family inclusion; the lower half,
    ((λ^p−‖U‖^p)/(2λ^p−‖U‖^p))^{1/p}·inf_m Rᵐ_λ, is informational.

    With `unit_homogeneous_estimates` (the same families at λ = 1) the second
    chain is checked as well: R_λ ≤ λ·inf_m Rᵐ_1, with
    ((λ^p−‖U‖^p)/(λ^p−‖U‖^p+1))^{1/p}·inf_m Rᵐ_1 reported as its lower reference.
    """
    if not homogeneous_estimates:
        raise ParameterError("homogeneous_estimates", "{}", "need at least one degree")
    _check_subset(full_estimate, homogeneous_estimates)
    if unit_homogeneous_estimates:
        _check_subset(full_estimate, unit_homogeneous_estimates)

    prefactor, unit_prefactor = lemma33_prefactors(p, lam, norm_u)
    inf_m = min(e.upper_bracket for e in homogeneous_estimates.values())
    tol = float(full_estimate.params.get("tol", 0.0))
    full_upper = full_estimate.upper_bracket
    entries = [inf_m + tol - full_upper]
    witnesses = []
    if entries[0] < 0:
        witnesses.append({"chain": "lambda", "full": full_upper, "inf_m": inf_m})
    details = {
        "space": str(space),
        "prefactor": prefactor,
        "inf_m": inf_m,
        "lower_reference": prefactor * inf_m,
        "per_degree": {m: e.upper_bracket for m, e in sorted(homogeneous_estimates.items())},
    }

    if unit_homogeneous_estimates:
        inf_unit = min(e.upper_bracket for e in unit_homogeneous_estimates.values())
        unit_margin = lam * inf_unit + tol - full_upper
        entries.append(unit_margin)
        if unit_margin < 0:
            witnesses.append({"chain": "unit", "full": full_upper, "lambda_inf_m": lam * inf_unit})
        details.update({
            "unit_prefactor": unit_prefactor,
            "inf_m_unit": inf_unit,
            "unit_lower_reference": unit_prefactor * inf_unit,
            "unit_upper_reference": lam * inf_unit,
            "per_degree_unit": {m: e.upper_bracket for m, e in sorted(unit_homogeneous_estimates.items())},
        })

    return CheckReport.from_margin("lemma33", min(entries), 0.0, witnesses, details)


# -- Schwarz–Pick type estimate ---------------------------------------------------


def verify_schwarz_pick(
    space: SpaceDescriptor,
    f: PluriharmonicPoly,
    m: int,
    q: float | None = None,
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> CheckReport:
    """‖Σ_{|α|=m}(a_α ± b_α)z^α‖ ≤ 4‖‖f‖I − Re a₀‖ over the domain.

    With q given (the domain must be the unit ball of ℓⁿ_q) the coefficient
    clause ‖a_α ± b_α‖ ≤ (4/π)·ρ_α·‖Σ(a_α ± b_α)z^α‖ is checked as well.
    """
    if m < 1:
        raise ParameterError("m", m, "must be ≥ 1")
    if q is not None and not (space.kind == "lq" and space.q == q and space.scale == 1):
        raise ParameterError("q", q, f"coefficient clause needs the unit ball of ℓ_q, got {space}")

    f_sup = sup_norm(f, space, budget, seed)
    eye = CoeffValue.scalar(1.0) if f.is_scalar else CoeffValue.matrix(np.eye(f.k))
    rhs = 4 * (eye * f_sup.value - f.constant_term.real_part()).operator_norm()
    rhs_unc = 4 * f_sup.uncertainty

    entries: list[tuple[float, float]] = []
    witnesses: list[dict] = []
    lhs_values = {}
    for sign in (1, -1):
        part = f.signed_part(m, sign)
        lhs = sup_norm(part, space, budget, seed + 1)
        lhs_values[sign] = lhs.value
        margin = rhs - lhs.value
        entries.append((margin, rhs_unc))
        if margin < -rhs_unc:
            witnesses.append({"function": f.function_id, "m": m, "sign": sign, "lhs": lhs.value, "rhs": rhs})
        if q is None:
            continue
        for alpha, coeff in part.a.items():
            bound = 4 / math.pi * alpha.rho(q) * lhs.value
            coeff_margin = bound - coeff.operator_norm()
            coeff_unc = 4 / math.pi * alpha.rho(q) * lhs.uncertainty
            entries.append((coeff_margin, coeff_unc))
            if coeff_margin < -coeff_unc:
                witnesses.append({"function": f.function_id, "alpha": str(alpha), "sign": sign, "coefficient": coeff.operator_norm(), "bound": bound})

    margin, uncertainty = _worst(entries)
    return CheckReport.from_margin(
        "schwarz_pick",
        margin,
        uncertainty,
        witnesses,
        {"function": f.function_id, "m": m, "sup_norm": f_sup.value, "rhs": rhs, "lhs_plus": lhs_values[1], "lhs_minus": lhs_values[-1]},
    )


def verify_monomial_coefficients(space: SpaceDescriptor, degrees: Sequence[int] = (1, 2, 3)) -> CheckReport:
    """Coefficient clause on monomials z^α with closed-form sup norms (exact)."""
    if space.kind != "lq":
        raise ParameterError("space", str(space), "monomial coefficient check needs an ℓ_q ball")
    entries, witnesses, checked = [], [], 0
    for m in degrees:
        for alpha in homogeneous_indices(space.dim, m):
            report = verify_schwarz_pick(space, monomial(alpha, space=space), m, q=space.q)
            entries.append((report.worst_margin, report.uncertainty))
            witnesses.extend(report.witnesses)
            checked += 1
    margin, uncertainty = _worst(entries)
    return CheckReport.from_margin("monomial_coefficients", margin, uncertainty, witnesses, {"space": str(space), "checked": checked})


def _suite_member(index: int, seed: int, budget: SamplingBudget) -> CheckReport:
    rng = child_rng(seed, index)
    n = int(rng.integers(1, 4))
    degree = int(rng.integers(1, 5))
    q = [1.0, 2.0, math.inf][int(rng.integers(3))]
    kind = "scalar" if rng.random() < 0.5 else "matrix"
    k = int(rng.integers(2, 4))
    space = SpaceDescriptor.lq(q, n)
    spec = RandomFamilySpec(n=n, max_degree=degree, coeff_kind=kind, k=k, count=1)
    f = random_family(spec, int(rng.integers(2**31)), space, budget)[0]
    m = int(rng.integers(1, degree + 1))
    return verify_schwarz_pick(space, f, m, budget=budget, seed=int(rng.integers(2**31)))


def run_schwarz_pick_suite(
    count: int = 1000,
    seed: int = 0,
    settings: NumericSettings | None = None,
    budget: SamplingBudget | None = None,
) -> CheckReport:
    """Seeded random polynomials (n ≤ 3, degree ≤ 4, scalar and k ∈ {2, 3}, q ∈ {1, 2, ∞})."""
    budget = budget or SUITE_BUDGET
    reports = FamilyExecutor(settings).map(lambda i, _: _suite_member(i, seed, budget), range(count))
    entries = [(r.worst_margin, r.uncertainty) for r in reports]
    failures = [r for r in reports if not r.passed]
    witnesses = [w for r in failures for w in r.witnesses]
    margin, uncertainty = _worst(entries)
    log.info("Schwarz–Pick suite: %d polynomials, %d violations", count, len(failures))
    return CheckReport.from_margin(
        "schwarz_pick", margin, uncertainty, witnesses[:20],
        {"count": count, "seed": seed, "violations": len(failures)},
    )


# -- necessity of ‖U‖ < λ -----------------------------------------------------------


def counterexample_scan(
    space: SpaceDescriptor,
    r: float,
    p: float = 1.0,
    lam: float = 1.0,
    ceiling: int = DEFAULT_SCAN_CEILING,
) -> NecessityWitness:
    """Smallest k with λ^p cos^p(1/k) + λ^p sin^p(1/k)|z₁|^p > λ^p.

    The witness has |z₁| = 0.99·r·sup|z₁| over the domain and zeros elsewhere.
    """
    if not 0 < r < 1:
        raise ParameterError("r", r, "must lie in (0, 1)")
    if not p >= 1:
        raise ParameterError("p", p, "must be ≥ 1")
    if ceiling < 1:
        raise ParameterError("ceiling", ceiling, "must be ≥ 1")
    w = WITNESS_FRACTION * r * first_coordinate_radius(space)
    witness = [0j] * space.dim
    witness[0] = complex(w)

    x = 1.0 / np.arange(1, ceiling + 1)
    # 1 − cos^p x without cancellation for small x
    gap = -np.expm1(p * np.log1p(-2 * np.sin(x / 2) ** 2))
    gain = (np.sin(x) * w) ** p
    violated = np.flatnonzero(gain > gap)
    if violated.size == 0:
        log.info("No violation up to k=%d at r=%s, p=%s", ceiling, r, p)
        return NecessityWitness(None, witness, r, p, lam)
    idx = int(violated[0])
    return NecessityWitness(idx + 1, witness, r, p, lam, float(lam**p * (gap[idx] - gain[idx])))


def verify_necessity(
    space: SpaceDescriptor,
    radii: Sequence[float] = (0.5, 0.1, 0.01),
    p: float = 1.0,
    lam: float = 1.0,
    ceiling: int = DEFAULT_SCAN_CEILING,
) -> CheckReport:
    """Run the scan at each r; passes when every r yields a violating k.

    For p = 1 the violating F_k is also built as a polynomial and checked
    against U = λI at radius r, where the majorant reads λ(cos + sin·r·R).
    """
    witnesses, margins, details = [], [], {}
    for r in radii:
        found = counterexample_scan(space, r, p, lam, ceiling)
        entry = {"k": found.k, "margin": found.margin}
        if found.found and p == 1:
            member = necessity_member(found.k, space.dim, space=space)
            check = check_function_at_r(member, BoundedOperatorU.identity(lam), space, r, 1.0, lam)
            entry["polynomial_margin"] = check.margin
        details[str(r)] = entry
        margins.append(found.margin if found.found else 0.0)
        if not found.found:
            witnesses.append({"r": r, "p": p, "k": None})
        else:
            witnesses.append({"r": r, "p": p, "k": found.k, "witness": found.witness})
    passed = all(details[str(r)]["k"] is not None for r in radii)
    worst = max(margins) if margins else 0.0
    return CheckReport(
        name="example11",
        passed=passed,
        worst_margin=float(worst),
        uncertainty=0.0,
        witnesses=witnesses,
        details={"space": str(space), "p": p, "lambda": lam, "ceiling": ceiling, "scans": details},
    )


# -- certified bounds against empirical estimates ----------------------------------


def _certified_lowers(space: SpaceDescriptor, p: float, lam: float) -> list[BoundReport]:
    sup_pnorm = sup_pnorm_on_ball(space, p)
    return [
        eval_thm11_family(variant, p, lam, 1.0, sup_pnorm)
        for variant in ("pluriharmonic_D", "corollary_identity", "holomorphic_C")
    ]


def verify_certified_bounds(
    space: SpaceDescriptor,
    lambdas: Sequence[float] = (1.5, 2.0, 4.0),
    ps: Sequence[float] = (1.0, 2.0),
    tol: float = 1e-4,
    settings: NumericSettings | None = None,
    transport: bool = True,
) -> CheckReport:
    """Certified lower bounds never exceed empirical upper estimates.

    With `transport`, the empirical polydisc estimate is also carried to B_Z
    through the two-sided domain comparison and checked against the
    certified lower bound on B_Z.
    """
    family = headline_family(space)
    if not family:
        raise ParameterError("space", str(space), "no certified-norm test family available")
    polydisc = SpaceDescriptor.polydisc(space.dim)
    transport = transport and not space.same_norm(polydisc)
    if transport:
        s_forward = embed_norm(space, polydisc)
        s_backward = embed_norm(polydisc, space)
        polydisc_family = headline_family(polydisc)

    entries, witnesses, rows = [], [], []
    for lam in lambdas:
        for p in ps:
            estimate = estimate_radius(space, family, None, p, lam, tol, settings, "headline")
            for report in _certified_lowers(space, p, lam):
                margin = estimate.upper_bracket - report.value
                entries.append((margin, tol))
                rows.append({"lambda": lam, "p": p, "formula": report.formula_id, "lower": report.value, "upper": estimate.upper_bracket})
                if margin < -tol:
                    witnesses.append(rows[-1])
            if not transport:
                continue
            poly_estimate = estimate_radius(polydisc, polydisc_family, None, p, lam, tol, settings, "headline")
            inner = BoundPair(
                lower=_certified_lowers(polydisc, p, lam)[0],
                upper=BoundReport("empirical", "upper", poly_estimate.upper_bracket, {"space": str(polydisc)}, certified=poly_estimate.certified),
            )
            moved = eval_sandwich(inner, s_forward, s_backward)
            lower = _certified_lowers(space, p, lam)[0]
            margin = moved.upper.value - lower.value
            entries.append((margin, tol))
            rows.append({"lambda": lam, "p": p, "formula": "transported", "lower": lower.value, "upper": moved.upper.value})
            if margin < -tol:
                witnesses.append(rows[-1])

    margin, uncertainty = _worst(entries)
    return CheckReport.from_margin("certified", margin, uncertainty, witnesses, {"space": str(space), "rows": rows})
