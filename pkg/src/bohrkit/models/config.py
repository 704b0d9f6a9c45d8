"""Pydantic configuration models."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt

OutputFormat = Literal["json", "csv", "table"]


class BoundConstants(BaseModel):
    """The existence-only constants of the asymptotic bounds.

    Every constant defaults to 1. A constant counts as user-supplied when it
    appears in ``model_fields_set``; reports built from defaults are flagged as
    asymptotic shapes rather than certified values.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    E1: PositiveFloat = 1.0
    E2: PositiveFloat = 1.0
    E3: PositiveFloat = 1.0
    E4: PositiveFloat = 1.0
    E5: PositiveFloat = 1.0
    E6: PositiveFloat = 1.0
    E2_prime: PositiveFloat = 1.0
    E3_prime: PositiveFloat = 1.0
    d: PositiveFloat = 1.0

    def is_default(self, name: str) -> bool:
        """True when the named constant was not explicitly supplied."""
        return name not in self.model_fields_set

    def snapshot(self) -> dict[str, float]:
        return self.model_dump()

    def merged(self, overrides: dict[str, float]) -> BoundConstants:
        """Return a copy with overrides applied; explicit values stay explicit."""
        data = {name: getattr(self, name) for name in self.model_fields_set}
        data.update(overrides)
        return BoundConstants(**data)


class SamplingBudget(BaseModel):
    """Multi-start ascent budget shared by sup norms, majorants and embeddings."""

    starts: PositiveInt = 16
    iterations: PositiveInt = 60
    candidates: PositiveInt = 256
    step: PositiveFloat = 0.25
    polish: bool = True


class Guardrails(BaseModel):
    """Desk-scale limits for generated polynomials."""

    max_vars: PositiveInt = 8
    max_degree: PositiveInt = 8
    max_matrix_k: PositiveInt = 4


class NumericSettings(BaseModel):
    """Numeric knobs for estimation and verification."""

    seed: int = 0
    tolerance: PositiveFloat = 1e-4
    workers: PositiveInt = 1
    sampling: SamplingBudget = Field(default_factory=SamplingBudget)
    guardrails: Guardrails = Field(default_factory=Guardrails)


class AppConfig(BaseModel):
    """Top-level application configuration."""

    numeric: NumericSettings = Field(default_factory=NumericSettings)
    constants: BoundConstants = Field(default_factory=BoundConstants)
    output_format: OutputFormat = "json"


class RunConfig(BaseModel):
    """Values collected from one CLI invocation, validated before dispatch."""

    space: str | None = None
    p: float = Field(default=1.0, ge=1.0)
    q: float | None = Field(default=None, ge=1.0)
    lam: float = Field(default=2.0, ge=1.0)
    n: int | None = Field(default=None, ge=1)
    n_range: str | None = None
    formula: str | None = None
    constants: BoundConstants = Field(default_factory=BoundConstants)
    seed: int = 0
    tolerance: PositiveFloat = 1e-4
    output_format: OutputFormat = "json"
    output_path: str | None = None
