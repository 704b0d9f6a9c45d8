"""Result models for bounds, estimates and checks."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Literal

import numpy as np

Role = Literal["lower", "upper"]

ASYMPTOTIC_NOTE = "asymptotic shape up to unspecified constants"


def jsonable(value: Any) -> Any:
    """Convert numpy scalars, tuples and infinities into plain JSON values."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, complex):
        return [jsonable(value.real), jsonable(value.imag)]
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    return value


@dataclass
class BoundReport:
    """One evaluated bound formula."""

    formula_id: str
    role: Role
    value: float
    params: dict[str, Any] = field(default_factory=dict)
    constants_used: dict[str, float] = field(default_factory=dict)
    certified: bool = True
    note: str = ""
    radius: str = "R"

    @property
    def status_label(self) -> str:
        """Human-readable provenance."""
        return "CERTIFIED" if self.certified else "SHAPE"

    def to_dict(self) -> dict[str, Any]:
        return jsonable(asdict(self))


@dataclass
class BoundPair:
    """Lower and upper bound for the same radius."""

    lower: BoundReport
    upper: BoundReport

    def to_dict(self) -> dict[str, Any]:
        return {"lower": self.lower.to_dict(), "upper": self.upper.to_dict()}


@dataclass
class SupEstimate:
    """Outcome of a supremum search (sup norm or majorant sum)."""

    value: float
    certified: bool
    uncertainty: float = 0.0
    converged: bool = True
    method: str = "ascent"

    @classmethod
    def exact(cls, value: float, method: str) -> SupEstimate:
        return cls(value=float(value), certified=True, uncertainty=0.0, converged=True, method=method)


@dataclass
class NormEstimate:
    """Outcome of an embedding-type norm computation."""

    value: float
    method: str
    converged: bool = True
    argmax: list[float] | None = None


@dataclass
class FunctionCheck:
    """Majorant inequality for one function at one radius."""

    satisfied: bool
    margin: float
    tolerance: float
    sup_norm: float
    majorant: float
    certified: bool


@dataclass
class FunctionMargin:
    """Per-member outcome of a radius estimate."""

    function_id: str
    critical_r: float
    margin: float
    certified: bool = True


@dataclass
class RadiusEstimate:
    """Bisection bracket for an empirical upper estimate of a Bohr radius."""

    lower_bracket: float
    upper_bracket: float
    family_id: str
    params: dict[str, Any] = field(default_factory=dict)
    per_function_margins: list[FunctionMargin] = field(default_factory=list)
    certified: bool = True
    notes: list[str] = field(default_factory=list)
    member_fingerprints: list[str] = field(default_factory=list)
    failed: bool = False

    @property
    def width(self) -> float:
        return self.upper_bracket - self.lower_bracket

    def to_dict(self) -> dict[str, Any]:
        return jsonable(asdict(self))


@dataclass
class NecessityWitness:
    """Smallest k for which F_k violates the majorant inequality at a witness point."""

    k: int | None
    witness: list[complex]
    r: float
    p: float
    lam: float
    margin: float | None = None

    @property
    def found(self) -> bool:
        return self.k is not None

    def to_dict(self) -> dict[str, Any]:
        return jsonable(asdict(self))


@dataclass
class CheckReport:
    """Outcome of one verification check."""

    name: str
    passed: bool
    worst_margin: float
    uncertainty: float = 0.0
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_margin(
        cls,
        name: str,
        worst_margin: float,
        uncertainty: float = 0.0,
        witnesses: list[dict[str, Any]] | None = None,
        details: dict[str, Any] | None = None,
    ) -> CheckReport:
        """Build a report whose pass flag follows worst_margin ≥ −uncertainty."""
        return cls(
            name=name,
            passed=bool(worst_margin >= -uncertainty),
            worst_margin=float(worst_margin),
            uncertainty=float(uncertainty),
            witnesses=witnesses or [],
            details=details or {},
        )

    @property
    def status_label(self) -> str:
        return "PASS" if self.passed else "FAIL"

    @property
    def max_deviation(self) -> float | None:
        return self.details.get("max_deviation")

    def to_dict(self) -> dict[str, Any]:
        data = jsonable(asdict(self))
        data["pass"] = data.pop("passed")
        return data
