"""Shared test fixtures for bohrkit."""

from __future__ import annotations

import pytest

from bohrkit.models.config import NumericSettings, SamplingBudget
from bohrkit.spaces import SpaceDescriptor


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point the config file at a temporary directory."""
    config_dir = tmp_path / ".bohrkit"
    monkeypatch.setattr("bohrkit.config.CONFIG_DIR", config_dir)
    monkeypatch.setattr("bohrkit.config.CONFIG_FILE", config_dir / "config.toml")
    return config_dir


@pytest.fixture
def disc():
    """The unit disc in one variable."""
    return SpaceDescriptor.polydisc(1)


@pytest.fixture
def bidisc():
    return SpaceDescriptor.polydisc(2)


@pytest.fixture
def euclidean2():
    """The Euclidean unit ball of C²."""
    return SpaceDescriptor.lq(2, 2)


@pytest.fixture
def small_budget():
    """A sampling budget small enough for unit tests."""
    return SamplingBudget(starts=6, iterations=30, candidates=64, polish=False)


@pytest.fixture
def fast_settings(small_budget):
    """Numeric settings with a coarse tolerance and the small budget."""
    return NumericSettings(seed=0, tolerance=1e-3, workers=1, sampling=small_budget)
