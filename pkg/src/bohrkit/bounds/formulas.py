"""Closed-form lower and upper bounds for powered Bohr radii.

Every function returns `BoundReport` objects. Formulas without free constants
are certified; formulas that involve one of the existence-only constants are
flagged as asymptotic shapes unless the constant was supplied explicitly.
"""

from __future__ import annotations

import math
from typing import Literal

from bohrkit.core.utils import reciprocal
from bohrkit.exceptions import NecessityViolationError, ParameterError
from bohrkit.logger import log
from bohrkit.models.config import BoundConstants
from bohrkit.models.result import ASYMPTOTIC_NOTE, BoundPair, BoundReport, Role

Thm11Variant = Literal["pluriharmonic_D", "corollary_identity", "holomorphic_C"]
Thm12Case = Literal["p_eq_1", "p_ge_2", "p_between"]
Cor14Regime = Literal["p_eq_1", "p_ge_q", "p_lt_q"]
Thm13aItem = Literal["subset_l2", "symmetric_2convex"]
SandwichVariant = Literal["two_sided", "subset_l2", "symmetric_2convex"]

THM11_IDS = {"pluriharmonic_D": "thm11", "corollary_identity": "cor11", "holomorphic_C": "thm19"}
BOUNDARY_NOTE = "case boundary: adjacent branches evaluated"


# -- shared pieces -------------------------------------------------------------


def _require(name: str, value: float, ok: bool, requirement: str) -> None:
    if not ok or (isinstance(value, float) and math.isnan(value)):
        raise ParameterError(name, value, requirement)


def _check_lambda(lam: float, strict: bool = True) -> None:
    if strict:
        _require("lambda", lam, lam > 1, "must be > 1")
    else:
        _require("lambda", lam, lam >= 1, "must be ≥ 1")


def _check_p(p: float) -> None:
    _require("p", p, 1 <= p < math.inf, "must satisfy 1 ≤ p < ∞")


def _check_n(n: int, minimum: int = 1) -> None:
    _require("n", n, n >= minimum, f"must be ≥ {minimum} (log n must be positive)" if minimum > 1 else "must be ≥ 1")


def contraction_factor(p: float, lam: float) -> float:
    """((λ^p − 1)/(2λ^p − 1))^{1/p}."""
    lp = lam**p
    return ((lp - 1) / (2 * lp - 1)) ** (1 / p)


def _constants(constants: BoundConstants | None) -> BoundConstants:
    return constants if constants is not None else BoundConstants()


def _report(
    formula_id: str,
    role: Role,
    value: float,
    params: dict,
    constants: BoundConstants | None,
    used: tuple[str, ...] = (),
    notes: tuple[str, ...] = (),
    radius: str = "R",
) -> BoundReport:
    certified = all(not constants.is_default(name) for name in used) if constants is not None else True
    note_parts = [] if certified else [ASYMPTOTIC_NOTE]
    note_parts.extend(n for n in notes if n)
    return BoundReport(
        formula_id=formula_id,
        role=role,
        value=float(value),
        params=dict(params),
        constants_used=constants.snapshot() if constants is not None and used else {},
        certified=certified,
        note="; ".join(note_parts),
        radius=radius,
    )


def _pick(candidates: dict[str, float], role: Role) -> tuple[str, float]:
    """Combine valid bounds from adjacent branches: max for lower, min for upper."""
    chooser = max if role == "lower" else min
    branch = chooser(candidates, key=candidates.__getitem__)
    return branch, candidates[branch]


# -- pluriharmonic / holomorphic lower bounds without free constants ------------


def lemma33_prefactors(p: float, lam: float, norm_u: float) -> tuple[float, float]:
    """((λ^p−‖U‖^p)/(2λ^p−‖U‖^p))^{1/p} and ((λ^p−‖U‖^p)/(λ^p−‖U‖^p+1))^{1/p}.

    The first links R_λ to inf_m Rᵐ_λ from below, the second links it to
    inf_m Rᵐ_1. The second also appears in the large-‖U‖ branch of D and C.
    """
    _check_p(p)
    _check_lambda(lam, strict=False)
    if not 0 <= norm_u < lam:
        raise NecessityViolationError(norm_u, lam)
    lp, up = lam**p, norm_u**p
    return ((lp - up) / (2 * lp - up)) ** (1 / p), ((lp - up) / (lp - up + 1)) ** (1 / p)


def _two_branch(p: float, lam: float, u: float, prefactor: float, threshold: float) -> tuple[float, list[str]]:
    lp, up = lam**p, u**p
    first = prefactor * ((lp - up) / (2 * lp - u)) ** (1 / p)
    second = prefactor * ((lp - up) / (lp - up + 1)) ** (1 / p)
    large = max(first, second / u)
    small = max(first, second)
    if math.isclose(u, threshold, rel_tol=1e-12):
        return max(large, small), [BOUNDARY_NOTE]
    return (large if u >= threshold else small), []


def eval_thm11_family(
    variant: Thm11Variant,
    p: float,
    lam: float,
    norm_u: float = 1.0,
    sup_pnorm: float = 1.0,
) -> BoundReport:
    """Lower bounds D/sup‖z‖_p, the identity corollary and C/sup‖z‖_p.

    `sup_pnorm` is sup of ‖z‖_p over the unit ball of Z.
    """
    if variant not in THM11_IDS:
        raise ParameterError("variant", variant, f"must be one of {', '.join(THM11_IDS)}")
    _check_p(p)
    _check_lambda(lam)
    _require("sup_pnorm", sup_pnorm, 0 < sup_pnorm < math.inf, "must be positive and finite")
    params = {"variant": variant, "p": p, "lambda": lam, "sup_pnorm": sup_pnorm}
    notes: list[str] = []

    if variant == "corollary_identity":
        value = 2 ** (-2 - 1 / p) * (lam**p - 1) ** (1 / p) / lam**2
    else:
        if not 0 < norm_u < lam:
            if norm_u >= lam:
                raise NecessityViolationError(norm_u, lam)
            raise ParameterError("norm_U", norm_u, "U must be non-null")
        params["norm_U"] = norm_u
        if variant == "pluriharmonic_D":
            prefactor = 1 / (4 * lam * 2 ** (1 / p))
            value, notes = _two_branch(p, lam, norm_u, prefactor, threshold=prefactor)
        else:
            value, notes = _two_branch(p, lam, norm_u, 1.0, threshold=1.0)
    if notes:
        log.warning("%s evaluated at the ‖U‖ case boundary (‖U‖=%s)", variant, norm_u)
    return _report(THM11_IDS[variant], "lower", value / sup_pnorm, params, None, notes=tuple(notes),
                   radius="K" if variant == "holomorphic_C" else "R")


# -- finite-dimensional coefficient algebras -------------------------------------


def _thm12_cases(p: float) -> list[str]:
    if p == 1:
        return ["p_eq_1"]
    if p < 2:
        return ["p_between"]
    if p == 2:
        return ["p_ge_2", "p_between"]
    return ["p_ge_2"]


def _thm12_value(case: str, n: int, p: float, e2z: float, ez1: float, c: BoundConstants) -> tuple[float, str]:
    if case == "p_eq_1":
        return c.E1 * max(1 / (math.sqrt(n) * e2z), 1 / (math.e * ez1)), "E1"
    if case == "p_ge_2":
        return c.E3 * e2z ** (-2 / p), "E3"
    theta = 2 * (p - 1) / p
    first = 1 / (math.sqrt(n) ** (1 - theta) * e2z)
    second = e2z ** (-theta) / (math.e ** (1 - theta) * ez1 ** (1 - theta))
    return c.E2 * max(first, second), "E2"


def _resolve_case(case: str | None, allowed: list[str], all_cases: tuple[str, ...], name: str, context: str) -> list[str]:
    if case is None:
        return allowed
    if case not in all_cases:
        raise ParameterError(name, case, f"must be one of {', '.join(all_cases)}")
    if case not in allowed:
        raise ParameterError(name, case, f"inconsistent with {context}")
    return [case]


def eval_thm12(
    case: Thm12Case | None,
    n: int,
    lam: float,
    p: float,
    embed_l2_to_z: float,
    embed_z_to_l1: float,
    constants: BoundConstants | None = None,
    formula_id: str = "thm12",
) -> BoundReport:
    """Lower bound for finite-dimensional B(H) with the three p-regimes.

    `case=None` infers the regime from p; at p = 2 the adjacent regime is
    evaluated too and the larger value is kept. A named case is evaluated alone.
    """
    _check_p(p)
    _check_lambda(lam)
    _check_n(n)
    _require("embed_l2_to_Z", embed_l2_to_z, embed_l2_to_z > 0, "must be positive")
    _require("embed_Z_to_l1", embed_z_to_l1, embed_z_to_l1 > 0, "must be positive")
    c = _constants(constants)
    cases = _resolve_case(case, _thm12_cases(p), ("p_eq_1", "p_ge_2", "p_between"), "case", f"p={p}")

    values, used = {}, {}
    for name in cases:
        values[name], used[name] = _thm12_value(name, n, p, embed_l2_to_z, embed_z_to_l1, c)
    branch, value = _pick(values, "lower")
    notes = (BOUNDARY_NOTE,) if len(values) > 1 else ()
    params = {
        "case": branch, "n": n, "lambda": lam, "p": p,
        "embed_l2_to_Z": embed_l2_to_z, "embed_Z_to_l1": embed_z_to_l1,
    }
    if branch == "p_between":
        params["theta"] = 2 * (p - 1) / p
    return _report(formula_id, "lower", value * contraction_factor(p, lam), params, c, (used[branch],), notes)


def eval_thm12_upper(
    n: int,
    lam: float,
    p: float,
    q: float,
    embed_z_to_lq: float,
    embed_lq_to_z: float,
    constants: BoundConstants | None = None,
    radius: Literal["K", "R"] = "K",
) -> BoundReport:
    """d·‖Z→ℓ_q‖·‖ℓ_q→Z‖·λ^{2/log n}·n^{1−1/p}·(log n/n)^{1−1/min(q,2)}."""
    _check_p(p)
    _check_lambda(lam, strict=False)
    _check_n(n, minimum=2)
    _require("q", q, q >= 1, "must be ≥ 1")
    c = _constants(constants)
    log_n = math.log(n)
    value = (
        c.d * embed_z_to_lq * embed_lq_to_z * lam ** (2 / log_n)
        * n ** (1 - 1 / p) * (log_n / n) ** (1 - 1 / min(q, 2))
    )
    params = {"n": n, "lambda": lam, "p": p, "q": q, "embed_Z_to_lq": embed_z_to_lq, "embed_lq_to_Z": embed_lq_to_z}
    notes = ("stated for K; holds for R since R ≤ K",) if radius == "R" else ()
    return _report("thm12u", "upper", value, params, c, ("d",), notes, radius=radius)


def _cor14_regimes(p: float, q: float) -> list[str]:
    if p == 1:
        return ["p_eq_1", "p_ge_q"] if q == 1 else ["p_eq_1"]
    if p < q:
        return ["p_lt_q"]
    if p == q:
        return ["p_ge_q", "p_lt_q"]
    return ["p_ge_q"]


def _cor14_value(regime: str, n: int, p: float, q: float, c: BoundConstants) -> tuple[float, str]:
    rate = math.log(n) / n
    log_exponent = 1 - 1 / min(q, 2)
    if regime == "p_eq_1":
        return c.E3_prime * rate**log_exponent, "E3_prime"
    if regime == "p_ge_q":
        return c.E2_prime * n ** (-1 / p), "E2_prime"
    if math.isinf(q):
        # limits of (p−1)/(p(q−1)) and (q−p)/(p(q−1)) as q → ∞
        power_exponent, rate_exponent = 0.0, log_exponent / p
    else:
        power_exponent = (p - 1) / (p * (q - 1))
        rate_exponent = log_exponent * (q - p) / (p * (q - 1))
    return c.E4 * n ** (-power_exponent) * rate**rate_exponent, "E4"


def eval_cor14(
    regime: Cor14Regime | None,
    q: float,
    p: float,
    lam: float,
    n: int,
    constants: BoundConstants | None = None,
) -> BoundReport:
    """Lower bound on B_{ℓⁿ_q} for finite-dimensional B(H)."""
    _check_p(p)
    _check_lambda(lam)
    _check_n(n, minimum=2)
    _require("q", q, q >= 1, "must be ≥ 1")
    c = _constants(constants)
    regimes = _resolve_case(regime, _cor14_regimes(p, q), ("p_eq_1", "p_ge_q", "p_lt_q"), "regime", f"p={p}, q={q}")

    values, used = {}, {}
    for name in regimes:
        values[name], used[name] = _cor14_value(name, n, p, q, c)
    branch, value = _pick(values, "lower")
    notes = (BOUNDARY_NOTE,) if len(values) > 1 else ()
    params = {"regime": branch, "q": q, "p": p, "lambda": lam, "n": n}
    return _report("cor14", "lower", value * contraction_factor(p, lam), params, c, (used[branch],), notes)


def eval_thm13a(
    item: Thm13aItem,
    case: Thm12Case | None,
    n: int,
    lam: float,
    p: float,
    embed_l2_to_zn: float,
    dual_ones: float,
    constants: BoundConstants | None = None,
) -> BoundPair:
    """Lower and upper bounds on B_{Z_n} for Banach sequence spaces Z.

    subset_l2: Z ⊂ ℓ₂. symmetric_2convex: Z symmetric and 2-convex, where
    ‖ℓ₂→Z_n‖ is bounded by a constant and drops out of the lower bound.
    """
    if item not in ("subset_l2", "symmetric_2convex"):
        raise ParameterError("item", item, "must be subset_l2 or symmetric_2convex")
    _check_n(n, minimum=2)
    _require("dual_ones", dual_ones, dual_ones > 0, "must be positive")
    c = _constants(constants)
    log_n = math.log(n)
    scale = c.d * lam ** (2 / log_n)

    if item == "subset_l2":
        lower = eval_thm12(case, n, lam, p, embed_l2_to_zn, dual_ones, c, formula_id="thm13a")
        upper_value = scale * embed_l2_to_zn * n ** (1 - 1 / p) * math.sqrt(log_n / n)
        notes: tuple[str, ...] = ()
    else:
        lower = eval_thm12(case, n, lam, p, 1.0, dual_ones, c, formula_id="thm13a")
        upper_value = scale * dual_ones * n ** (-1 / p) * math.sqrt(log_n)
        notes = ("upper displayed for B_Z; evaluated on Z_n with n explicit",)
    lower.params.update({"item": item, "embed_l2_to_Zn": embed_l2_to_zn, "dual_ones": dual_ones})
    lower.params.pop("embed_l2_to_Z", None)
    lower.params.pop("embed_Z_to_l1", None)
    params = {"item": item, "n": n, "lambda": lam, "p": p, "embed_l2_to_Zn": embed_l2_to_zn, "dual_ones": dual_ones}
    upper = _report("thm13a", "upper", upper_value, params, c, ("d",), notes)
    return BoundPair(lower=lower, upper=upper)


# -- infinite-dimensional coefficient algebras ------------------------------------


def eval_thm13_psi(
    n: int,
    lam: float,
    p: float,
    q: float,
    cotype_t: float,
    cot_x: float = 2.0,
    constants: BoundConstants | None = None,
) -> BoundPair:
    """Ψ₁ (lower) and Ψ₂ (upper) on B_{ℓⁿ_q} for infinite-dimensional B(H).

    Cot(X) = ∞ is read as 1/Cot(X) = 0.
    """
    _check_p(p)
    _check_lambda(lam, strict=False)
    _check_n(n)
    _require("q", q, q >= 1, "must be ≥ 1")
    _require("cot_X", cot_x, cot_x >= 2, "must be ≥ 2")
    _require("cotype_t", cotype_t, cotype_t >= 2, "must be ≥ 2")
    c = _constants(constants)
    base = (lam**p - 1) ** (1 / p) / lam
    threshold = min(cot_x, q)

    branches = {
        "p_gt_min": (c.E5 * base, "E5"),
        "p_le_min": (c.E6 * base * n ** (reciprocal(min(cotype_t, q)) - 1 / p), "E6"),
    }
    if p == threshold:
        allowed = ["p_gt_min", "p_le_min"]
    else:
        allowed = ["p_gt_min"] if p > threshold else ["p_le_min"]
    branch, value = _pick({name: branches[name][0] for name in allowed}, "lower")
    notes = (BOUNDARY_NOTE,) if len(allowed) > 1 else ()
    params = {"n": n, "lambda": lam, "p": p, "q": q, "cotype_t": cotype_t, "cot_X": cot_x, "branch": branch}
    psi1 = _report("thm13.psi1", "lower", value, params, c, (branches[branch][1],), notes)

    if q <= cot_x:
        branch2, exponent = "q_le_cot", reciprocal(q) - 1 / p
    else:
        branch2, exponent = "q_gt_cot", reciprocal(cot_x) - 1 / p
    params2 = {"n": n, "lambda": lam, "p": p, "q": q, "cot_X": cot_x, "branch": branch2}
    psi2 = _report("thm13.psi2", "upper", 2 * lam * n**exponent, params2, None)
    return BoundPair(lower=psi1, upper=psi2)


def eval_sandwich(
    inner: BoundPair,
    s_forward: float,
    s_backward: float,
    variant: SandwichVariant = "two_sided",
    n: int | None = None,
    dual_ones: float | None = None,
) -> BoundPair:
    """Transport a bound pair on B_{ℓⁿ_q} to B_Z.

    two_sided: lower/(S_f·S_b) and upper·S_f·S_b with S_f = S(B_Z, B_ℓq) and
    S_b = S(B_ℓq, B_Z). subset_l2: lower/S_b and upper·S_f, where the forward
    slot carries S(B_ℓ₂, B_Z). symmetric_2convex: lower·√n/‖Σe*‖ and
    upper·‖Σe*‖/√n; the S factors are ignored.
    """
    _require("S_forward", s_forward, s_forward > 0, "must be positive")
    _require("S_backward", s_backward, s_backward > 0, "must be positive")
    if variant == "two_sided":
        down, up = s_forward * s_backward, s_forward * s_backward
    elif variant == "subset_l2":
        down, up = s_backward, s_forward
    elif variant == "symmetric_2convex":
        if n is None or dual_ones is None or dual_ones <= 0:
            raise ParameterError("dual_ones", dual_ones, "symmetric_2convex needs n and a positive dual_ones")
        down = dual_ones / math.sqrt(n)
        up = dual_ones / math.sqrt(n)
    else:
        raise ParameterError("variant", variant, "must be two_sided, subset_l2 or symmetric_2convex")

    extra = {"sandwich": variant, "S_forward": s_forward, "S_backward": s_backward}
    if variant == "symmetric_2convex":
        extra = {"sandwich": variant, "n": n, "dual_ones": dual_ones}
    return BoundPair(
        lower=_transport(inner.lower, inner.lower.value / down, extra),
        upper=_transport(inner.upper, inner.upper.value * up, extra),
    )


def _transport(report: BoundReport, value: float, extra: dict) -> BoundReport:
    return BoundReport(
        formula_id="sandwich",
        role=report.role,
        value=float(value),
        params={**report.params, "inner": report.formula_id, **extra},
        constants_used=dict(report.constants_used),
        certified=report.certified,
        note=report.note,
        radius=report.radius,
    )
