"""Data models for bohrkit."""

from bohrkit.models.config import AppConfig, BoundConstants, NumericSettings, RunConfig, SamplingBudget
from bohrkit.models.result import BoundReport, CheckReport, RadiusEstimate

__all__ = [
    "AppConfig",
    "BoundConstants",
    "BoundReport",
    "CheckReport",
    "NumericSettings",
    "RadiusEstimate",
    "RunConfig",
    "SamplingBudget",
]
