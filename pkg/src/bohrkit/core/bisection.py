"""Bracketing and bisection for monotone scalar problems."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from bohrkit.exceptions import BracketingError
from bohrkit.logger import log

MAX_GROWTH = 200
MAX_ITERATIONS = 200


def grow_upper_bracket(func: Callable[[float], float], target: float, start: float = 1.0) -> float:
    """Smallest start·2^j with func(start·2^j) ≥ target, for increasing func."""
    hi = start
    for _ in range(MAX_GROWTH):
        if func(hi) >= target:
            return hi
        hi *= 2.0
    raise BracketingError(f"f(x) = {target}", MAX_GROWTH)


def bisect_increasing(
    func: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    abs_tol: float,
) -> float:
    """Solve func(x) = target on [lo, hi] for an increasing func.

    Stops once |func(x) - target| ≤ abs_tol or the interval cannot be halved
    any further in floating point.
    """
    mid = 0.5 * (lo + hi)
    for iteration in range(MAX_ITERATIONS):
        mid = 0.5 * (lo + hi)
        value = func(mid)
        if abs(value - target) <= abs_tol:
            return mid
        if value < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= np.finfo(float).eps * max(1.0, hi):
            log.debug("Bisection hit float resolution after %d steps at %s", iteration + 1, mid)
            return 0.5 * (lo + hi)
    log.warning("Bisection did not reach tolerance %s for target %s", abs_tol, target)
    return mid


def bisect_decreasing_batch(
    func: Callable[[np.ndarray], np.ndarray],
    lo: np.ndarray,
    hi: np.ndarray,
    iterations: int = 64,
) -> np.ndarray:
    """Vectorized bisection for the root of decreasing functions, one per row.

    Requires func(lo) ≥ 0 ≥ func(hi) row-wise; returns the upper end, which
    always satisfies func ≤ 0.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        positive = func(mid) > 0
        lo = np.where(positive, mid, lo)
        hi = np.where(positive, hi, mid)
        if np.all(hi - lo <= 2 * np.finfo(float).eps * hi):
            break
    return hi
