"""Custom exception hierarchy for bohrkit."""

from __future__ import annotations


class BohrError(Exception):
    """Base exception for all bohrkit errors."""


class ParameterError(BohrError):
    """Raised when an input violates an operation's precondition."""

    def __init__(self, name: str, value: object, requirement: str):
        self.name = name
        self.value = value
        self.requirement = requirement
        super().__init__(f"Invalid {name}={value!r}: {requirement}")


class DimensionMismatchError(BohrError):
    """Raised when a vector or space does not have the expected dimension."""

    def __init__(self, expected: int, actual: int, what: str = "vector"):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Dimension mismatch for {what}: expected {expected}, got {actual}")


class NonFiniteInputError(BohrError):
    """Raised when an input contains NaN or infinite entries."""

    def __init__(self, what: str):
        self.what = what
        super().__init__(f"Non-finite entries in {what}")


class GrammarError(BohrError):
    """Raised when a text form (space, polynomial, range) cannot be parsed."""

    def __init__(self, text: str, reason: str):
        self.text = text
        self.reason = reason
        super().__init__(f"Cannot parse {text!r}: {reason}")


class NoClosedFormError(BohrError):
    """Raised when method=closed_form is requested for an unsupported space pair."""

    def __init__(self, source: str, target: str):
        self.source = source
        self.target = target
        super().__init__(f"No closed form for ‖Id: {source} → {target}‖; use the numeric method")


class BracketingError(BohrError):
    """Raised when a root cannot be bracketed within the growth limit."""

    def __init__(self, what: str, limit: int):
        self.what = what
        self.limit = limit
        super().__init__(f"Failed to bracket {what} after {limit} expansions")


class GuardrailError(BohrError):
    """Raised when a desk-scale guardrail is exceeded without the override flag."""

    def __init__(self, name: str, value: int, limit: int):
        self.name = name
        self.value = value
        self.limit = limit
        super().__init__(f"{name}={value} exceeds the limit {limit}; pass the override flag to allow it")


class NecessityViolationError(BohrError):
    """Raised when ‖U‖ ≥ λ, where no positive radius exists in general."""

    def __init__(self, norm_u: float, lam: float):
        self.norm_u = norm_u
        self.lam = lam
        super().__init__(
            f"‖U‖={norm_u} must be strictly below λ={lam}; the family "
            "F_k(z) = i·cos(1/k)I + ½·sin(1/k)I·(z₁ + z̄₁) with U = λI violates "
            "the inequality at every r > 0 (see `verify --suite example11`)"
        )


class SubsetPreconditionError(BohrError):
    """Raised when a homogeneous family is not contained in the full family."""

    def __init__(self, missing: list[str]):
        self.missing = missing
        super().__init__(f"Homogeneous members not in the full family: {', '.join(missing[:5])}")


class ConfigError(BohrError):
    """Raised when configuration loading or validation fails."""


VALIDATION_ERRORS = (
    ParameterError,
    DimensionMismatchError,
    NonFiniteInputError,
    GrammarError,
    NoClosedFormError,
    GuardrailError,
    NecessityViolationError,
    SubsetPreconditionError,
    ConfigError,
)
