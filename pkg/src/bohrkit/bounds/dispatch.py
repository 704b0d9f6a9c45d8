"""Formula dispatch: resolve space invariants from a descriptor and evaluate."""

from __future__ import annotations

import math
from typing import Literal

from pydantic import BaseModel, Field

from bohrkit.bounds.formulas import (
    eval_cor14,
    eval_sandwich,
    eval_thm11_family,
    eval_thm12,
    eval_thm12_upper,
    eval_thm13_psi,
    eval_thm13a,
)
from bohrkit.exceptions import DimensionMismatchError, ParameterError
from bohrkit.logger import log
from bohrkit.models.config import BoundConstants, SamplingBudget
from bohrkit.models.result import BoundReport
from bohrkit.spaces.descriptor import SpaceDescriptor
from bohrkit.spaces.invariants import dual_ones_estimate, embed_norm_estimate

FORMULA_IDS = ("thm11", "cor11", "thm19", "thm12", "thm12u", "cor14", "thm13a", "thm13", "sandwich")
NUMERIC_NOTE = "space invariant estimated numerically (lower estimate)"


class FormulaRequest(BaseModel):
    """Inputs of one formula evaluation; unused fields are ignored."""

    space: SpaceDescriptor | None = None
    p: float = Field(default=1.0, ge=1.0)
    q: float | None = Field(default=None, ge=1.0)
    lam: float = Field(default=2.0, ge=1.0)
    n: int | None = Field(default=None, ge=1)
    norm_u: float = Field(default=1.0, ge=0.0)
    regime: str | None = None
    item: Literal["subset_l2", "symmetric_2convex"] | None = None
    sandwich: Literal["two_sided", "subset_l2", "symmetric_2convex"] = "two_sided"
    cot_x: float = Field(default=2.0, ge=2.0)
    cotype_t: float | None = Field(default=None, ge=2.0)
    constants: BoundConstants = Field(default_factory=BoundConstants)
    budget: SamplingBudget = Field(default_factory=SamplingBudget)
    seed: int = 0


class _Invariants:
    """Memoized embedding norms for one space, with provenance notes."""

    def __init__(self, space: SpaceDescriptor, budget: SamplingBudget, seed: int):
        self.space = space
        self.budget = budget
        self.seed = seed
        self.numeric = False
        self._cache: dict[tuple, float] = {}

    def _record(self, key: tuple, estimate) -> float:
        if estimate.method != "closed_form":
            self.numeric = True
        self._cache[key] = estimate.value
        return estimate.value

    def from_lq(self, q: float) -> float:
        """‖Id: ℓⁿ_q → Z‖ = S(B_ℓq, B_Z)."""
        key = ("from", q)
        if key not in self._cache:
            source = SpaceDescriptor.lq(q, self.space.dim)
            self._record(key, embed_norm_estimate(source, self.space, budget=self.budget, seed=self.seed))
        return self._cache[key]

    def to_lq(self, q: float) -> float:
        """‖Id: Z → ℓⁿ_q‖ = S(B_Z, B_ℓq)."""
        key = ("to", q)
        if key not in self._cache:
            target = SpaceDescriptor.lq(q, self.space.dim)
            self._record(key, embed_norm_estimate(self.space, target, budget=self.budget, seed=self.seed))
        return self._cache[key]

    def dual_ones(self) -> float:
        key = ("dual",)
        if key not in self._cache:
            self._record(key, dual_ones_estimate(self.space, budget=self.budget, seed=self.seed))
        return self._cache[key]

    def annotate(self, reports: list[BoundReport]) -> list[BoundReport]:
        if self.numeric:
            for report in reports:
                report.note = "; ".join(filter(None, [report.note, NUMERIC_NOTE]))
        return reports


def _resolve_space(request: FormulaRequest) -> SpaceDescriptor:
    if request.space is not None:
        if request.n is not None and request.n != request.space.dim:
            raise DimensionMismatchError(request.n, request.space.dim, "space")
        return request.space
    q = request.q if request.q is not None else math.inf
    return SpaceDescriptor.lq(q, request.n or 1)


def _require_n(request: FormulaRequest, space: SpaceDescriptor | None = None) -> int:
    if space is not None:
        return space.dim
    if request.n is None:
        raise ParameterError("n", None, "this formula needs a dimension")
    return request.n


def evaluate_formula(formula_id: str, request: FormulaRequest) -> list[BoundReport]:
    """Evaluate one formula id; returns every report it produces."""
    if formula_id not in FORMULA_IDS:
        raise ParameterError("formula", formula_id, f"must be one of {', '.join(FORMULA_IDS)}")
    c = request.constants
    p, lam = request.p, request.lam
    log.debug("Evaluating %s with %s", formula_id, request.model_dump(exclude={"constants", "budget"}))

    if formula_id in ("thm11", "cor11", "thm19"):
        space = _resolve_space(request)
        inv = _Invariants(space, request.budget, request.seed)
        sup_pnorm = inv.to_lq(p)
        variant = {"thm11": "pluriharmonic_D", "cor11": "corollary_identity", "thm19": "holomorphic_C"}[formula_id]
        report = eval_thm11_family(variant, p, lam, request.norm_u, sup_pnorm)
        report.params["space"] = str(space)
        return inv.annotate([report])

    if formula_id == "cor14":
        q = request.q if request.q is not None else math.inf
        return [eval_cor14(request.regime, q, p, lam, _require_n(request), c)]

    if formula_id == "thm13":
        q = request.q if request.q is not None else 2.0
        cotype_t = request.cotype_t if request.cotype_t is not None else request.cot_x
        pair = eval_thm13_psi(_require_n(request, request.space), lam, p, q, cotype_t, request.cot_x, c)
        return [pair.lower, pair.upper]

    space = _resolve_space(request)
    inv = _Invariants(space, request.budget, request.seed)
    n = space.dim

    if formula_id == "thm12":
        report = eval_thm12(request.regime, n, lam, p, inv.from_lq(2), inv.to_lq(1), c)
        reports = [report]
    elif formula_id == "thm12u":
        q = request.q if request.q is not None else 2.0
        reports = [
            eval_thm12_upper(n, lam, p, q, inv.to_lq(q), inv.from_lq(q), c, radius=radius)
            for radius in ("K", "R")
        ]
    elif formula_id == "thm13a":
        if request.item is None:
            raise ParameterError("item", None, "thm13a needs item subset_l2 or symmetric_2convex")
        pair = eval_thm13a(request.item, request.regime, n, lam, p, inv.from_lq(2), inv.dual_ones(), c)
        reports = [pair.lower, pair.upper]
    else:
        reports = _sandwich_reports(request, space, inv)
    for report in reports:
        report.params["space"] = str(space)
    return inv.annotate(reports)


def _sandwich_reports(request: FormulaRequest, space: SpaceDescriptor, inv: _Invariants) -> list[BoundReport]:
    q = request.q if request.q is not None else 2.0
    cotype_t = request.cotype_t if request.cotype_t is not None else request.cot_x
    inner = eval_thm13_psi(space.dim, request.lam, request.p, q, cotype_t, request.cot_x, request.constants)
    if request.sandwich == "two_sided":
        pair = eval_sandwich(inner, inv.to_lq(q), inv.from_lq(q))
    elif request.sandwich == "subset_l2":
        pair = eval_sandwich(inner, inv.from_lq(2), inv.from_lq(q), "subset_l2")
    else:
        pair = eval_sandwich(inner, 1.0, 1.0, "symmetric_2convex", n=space.dim, dual_ones=inv.dual_ones())
    return [pair.lower, pair.upper]


def application_bounds(
    space: SpaceDescriptor,
    p: float,
    lam: float,
    constants: BoundConstants | None = None,
    finite_dimensional: bool = True,
    q: float = 2.0,
    cot_x: float = 2.0,
    cotype_t: float | None = None,
    budget: SamplingBudget | None = None,
    seed: int = 0,
) -> list[BoundReport]:
    """Lower and upper bounds for any implemented space through computed invariants.

    Finite-dimensional coefficients: the three-regime lower bound with
    ‖ℓ₂→Z‖ and ‖Z→ℓ₁‖, plus the ℓ_q-routed upper bound for both radii.
    Infinite-dimensional coefficients: Ψ₁/Ψ₂ on ℓ_q transported to B_Z.
    """
    constants = constants or BoundConstants()
    request = FormulaRequest(
        space=space, p=p, q=q, lam=lam, constants=constants, cot_x=cot_x,
        cotype_t=cotype_t, budget=budget or SamplingBudget(), seed=seed,
    )
    if finite_dimensional:
        reports = evaluate_formula("thm12", request)
        if space.dim >= 2:
            reports += evaluate_formula("thm12u", request)
        else:
            log.info("Skipping the upper bound on %s: it needs n ≥ 2", space)
        return reports
    return evaluate_formula("sandwich", request)

