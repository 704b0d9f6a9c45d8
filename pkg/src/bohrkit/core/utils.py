"""Utility functions for bohrkit numerics."""

from __future__ import annotations

import math

import numpy as np

from bohrkit.exceptions import NonFiniteInputError


def reciprocal(x: float) -> float:
    """1/x in the extended reals: 1/∞ = 0."""
    return 0.0 if math.isinf(x) else 1.0 / x


def split_seed(seed: int, count: int) -> list[int]:
    """Derive `count` independent child seeds from a master seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


def child_rng(seed: int, *keys: int) -> np.random.Generator:
    """Generator keyed by a master seed and a path of integers."""
    return np.random.default_rng(np.random.SeedSequence([seed, *keys]))


def as_complex_vector(z, what: str = "z") -> np.ndarray:
    """Convert to a 1-D complex array and reject non-finite entries."""
    arr = np.asarray(z, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInputError(what)
    return arr


def format_float(x: float) -> str:
    """Compact text for grammar output: integers without decimals, inf as 'inf'."""
    if math.isinf(x):
        return "inf"
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))
