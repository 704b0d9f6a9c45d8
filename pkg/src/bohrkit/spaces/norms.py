"""Norm evaluation for the four sequence-space families.

All four norms are lattice norms, so everything is computed from the moduli
|z_k|. Batched helpers take an (N, n) array of nonnegative moduli and return
N unscaled norms; public functions apply the descriptor's scale.
"""

from __future__ import annotations

import math

import numpy as np

from bohrkit.core.bisection import bisect_decreasing_batch, bisect_increasing, grow_upper_bracket
from bohrkit.core.utils import as_complex_vector, reciprocal
from bohrkit.exceptions import DimensionMismatchError, ParameterError
from bohrkit.logger import log
from bohrkit.models.result import CheckReport
from bohrkit.spaces.descriptor import OrliczFunction, SpaceDescriptor

UNCONDITIONAL_TOL = 1e-9


def lp_batch(a: np.ndarray, q: float) -> np.ndarray:
    """ℓ_q norms of the rows of a."""
    return np.linalg.norm(a, ord=q, axis=-1)


def lorentz_weights(s: float, t: float, n: int) -> np.ndarray:
    """Telescoping weights k^{t/s} − (k−1)^{t/s}, with the first weight equal to 1."""
    exponent = t * reciprocal(s)
    k = np.arange(1, n + 1, dtype=float)
    weights = k**exponent - (k - 1.0) ** exponent
    weights[0] = 1.0
    return weights


def raw_norm_batch(space: SpaceDescriptor, a: np.ndarray) -> np.ndarray:
    """Unscaled norms of nonnegative moduli rows a with shape (N, space.dim)."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if space.kind == "lq":
        return lp_batch(a, space.q)
    if space.kind == "mixed":
        blocks = a.reshape(a.shape[0], space.m, space.n_inner)
        return lp_batch(lp_batch(blocks, space.t), space.s)
    if space.kind == "lorentz":
        return _lorentz_batch(space, a)
    return _luxemburg_batch(space.psi, a)


def _lorentz_batch(space: SpaceDescriptor, a: np.ndarray) -> np.ndarray:
    decreasing = -np.sort(-a, axis=1)
    if math.isinf(space.t):
        k = np.arange(1, space.dim + 1, dtype=float)
        return np.max(k ** reciprocal(space.s) * decreasing, axis=1)
    weights = lorentz_weights(space.s, space.t, space.dim)
    return np.sum(weights * decreasing**space.t, axis=1) ** (1.0 / space.t)


def _luxemburg_batch(psi: OrliczFunction, a: np.ndarray) -> np.ndarray:
    """inf{ρ > 0 : Σ ψ(a_k/ρ) ≤ 1} per row, by vectorized bisection.

    With c = ψ⁻¹(1) the root lies in [max(a)/c, n·max(a)/c]: the left end from
    the largest term alone, the right end from convexity, ψ(x/n) ≤ ψ(x)/n.
    """
    peak = a.max(axis=1)
    result = np.zeros(a.shape[0])
    live = peak > 0
    if not np.any(live):
        return result
    rows = a[live]
    c = psi.inverse(1.0)
    lo = peak[live] / c * (1 - 1e-9)
    hi = rows.shape[1] * peak[live] / c * (1 + 1e-12)

    def excess(rho: np.ndarray) -> np.ndarray:
        return np.sum(psi(rows / rho[:, None]), axis=1) - 1.0

    result[live] = bisect_decreasing_batch(excess, lo, hi)
    return result


def _check_vector(space: SpaceDescriptor, z) -> np.ndarray:
    arr = as_complex_vector(z)
    if arr.size != space.dim:
        raise DimensionMismatchError(space.dim, arr.size)
    return arr


def norm(space: SpaceDescriptor, z) -> float:
    """‖z‖_Z / scale."""
    arr = _check_vector(space, z)
    return float(raw_norm_batch(space, np.abs(arr)[None, :])[0]) / space.scale


def minkowski_functional(space: SpaceDescriptor, z) -> float:
    """p_Ω(z) = inf{t > 0 : z/t ∈ Ω} for Ω = scale·B_Z; equals norm(space, z)."""
    return norm(space, z)


def contains(space: SpaceDescriptor, z) -> bool:
    """True when z lies in the open domain."""
    return minkowski_functional(space, z) < 1.0


def basis_norms(space: SpaceDescriptor) -> np.ndarray:
    """Unscaled ‖e_k‖ for every k."""
    return raw_norm_batch(space, np.eye(space.dim))


def ones_norm(space: SpaceDescriptor) -> float:
    """Unscaled ‖Σ e_k‖."""
    return float(raw_norm_batch(space, np.ones((1, space.dim)))[0])


def orlicz_inverse(psi: OrliczFunction, y: float) -> float:
    """x with ψ(x) = y, by bisection on a geometrically grown bracket."""
    if not y >= 0 or math.isinf(y):
        raise ParameterError("y", y, "must be a finite nonnegative real")
    if y == 0:
        return 0.0

    def scalar(x: float) -> float:
        return float(psi(np.array([x]))[0])

    hi = grow_upper_bracket(scalar, y, start=1.0)
    lo = 0.0 if hi == 1.0 else hi / 2
    x = bisect_increasing(scalar, y, lo, hi, abs_tol=1e-12 * max(1.0, y))
    log.debug("ψ⁻¹(%s) = %s for ψ=%s", y, x, psi.expr)
    return x


def check_unconditionality(space: SpaceDescriptor, samples: int = 100, seed: int = 0) -> CheckReport:
    """Compare ‖εz‖ with ‖z‖ for random z and random unimodular ε."""
    if samples < 1:
        raise ParameterError("samples", samples, "must be ≥ 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((samples, space.dim)) + 1j * rng.standard_normal((samples, space.dim))
    eps = np.exp(1j * rng.uniform(0, 2 * np.pi, (samples, space.dim)))

    plain = raw_norm_batch(space, np.abs(z))
    rotated = raw_norm_batch(space, np.abs(eps * z))
    deviation = float(np.max(np.abs(rotated - plain)) / space.scale)

    log.debug("Unconditionality of %s: max deviation %s over %d samples", space, deviation, samples)
    return CheckReport.from_margin(
        name=f"unconditional[{space}]",
        worst_margin=-deviation,
        uncertainty=UNCONDITIONAL_TOL,
        details={"max_deviation": deviation, "samples": samples},
    )
