"""Multi-start stochastic ascent with optional Nelder–Mead polish.

Every search in bohrkit (embedding norms, sup norms, majorant sums) maximizes
a batched objective over a feasible set described by a projection. Starting
points are supplied by the caller, so structured candidates (basis vectors,
the all-ones vector) are always part of the population.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from bohrkit.logger import log

Objective = Callable[[np.ndarray], np.ndarray]
Projection = Callable[[np.ndarray], np.ndarray]
Proposal = Callable[[np.ndarray, np.ndarray, np.random.Generator], np.ndarray]

GROW = 1.5
SHRINK = 0.7
PATIENCE = 10
REL_STALL = 1e-9


@dataclass
class AscentResult:
    """Best point found and the per-restart values."""

    value: float
    argmax: np.ndarray
    restart_values: np.ndarray
    converged: bool

    @property
    def spread(self) -> float:
        """Gap between the best restart and the median restart."""
        if self.restart_values.size <= 1:
            return 0.0
        return float(self.value - np.median(self.restart_values))


def multistart_ascent(
    objective: Objective,
    project: Projection,
    starts: np.ndarray,
    propose: Proposal,
    *,
    iterations: int,
    step: float,
    rng: np.random.Generator,
    polish: bool = False,
) -> AscentResult:
    """Maximize objective from each start; accept-if-better with adaptive steps."""
    x = project(np.array(starts, dtype=float))
    fx = _safe(objective(x))
    steps = np.full(x.shape[0], step)
    history = [float(fx.max())]
    converged = False

    for _ in range(iterations):
        candidate = project(propose(x, steps, rng))
        fc = _safe(objective(candidate))
        better = fc > fx
        x[better] = candidate[better]
        fx[better] = fc[better]
        steps = np.where(better, np.minimum(steps * GROW, 4 * step), steps * SHRINK)
        history.append(float(fx.max()))
        if len(history) > PATIENCE:
            old = history[-PATIENCE - 1]
            if history[-1] - old <= REL_STALL * max(1.0, abs(history[-1])) and np.all(steps < step * 1e-2):
                converged = True
                break
    else:
        converged = bool(np.all(steps < step * 1e-2))

    best = int(np.argmax(fx))
    value = float(fx[best])
    argmax = x[best].copy()

    if polish:
        polished, polished_value = _polish(objective, project, argmax)
        if polished_value > value:
            log.debug("Polish improved %s -> %s", value, polished_value)
            value, argmax = polished_value, polished
            fx[best] = value

    if not converged:
        log.debug("Ascent stopped at budget with best %s", value)
    return AscentResult(value=value, argmax=argmax, restart_values=fx, converged=converged)


def gaussian_moduli_proposal(x: np.ndarray, steps: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Additive noise relative to each row's mean modulus, reflected into the orthant."""
    scale = np.maximum(x.mean(axis=1, keepdims=True), 1e-12)
    return np.abs(x + steps[:, None] * scale * rng.standard_normal(x.shape))


def phased_proposal(dim: int) -> Proposal:
    """Proposal for [moduli | phases] rows of width 2·dim."""

    def propose(x: np.ndarray, steps: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        out = x.copy()
        out[:, :dim] = gaussian_moduli_proposal(x[:, :dim], steps, rng)
        out[:, dim:] = x[:, dim:] + steps[:, None] * np.pi * rng.standard_normal((x.shape[0], dim))
        return out

    return propose


def _polish(objective: Objective, project: Projection, x0: np.ndarray) -> tuple[np.ndarray, float]:
    def negative(v: np.ndarray) -> float:
        value = _safe(objective(project(v[None, :])))[0]
        return -float(value)

    result = minimize(negative, x0, method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 200 * x0.size})
    point = project(result.x[None, :])[0]
    return point, float(_safe(objective(point[None, :]))[0])


def _safe(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    return np.where(np.isfinite(values), values, -np.inf)
