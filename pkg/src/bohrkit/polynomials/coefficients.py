"""Coefficient values (scalars or square matrices) and the operator U."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.linalg import svdvals
from scipy.sparse.linalg import svds

from bohrkit.exceptions import DimensionMismatchError, NonFiniteInputError, ParameterError
from bohrkit.logger import log

DIRECT_SVD_LIMIT = 64


@dataclass(frozen=True, eq=False)
class CoeffValue:
    """An element of the coefficient algebra: a complex scalar or a k×k matrix.

    Scalars are stored as 1×1 arrays so that evaluation code treats both kinds
    alike. The stored array is read-only.
    """

    data: np.ndarray
    is_scalar: bool = False

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=complex)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
            object.__setattr__(self, "is_scalar", True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ParameterError("coefficient", arr.shape, "must be a scalar or a square matrix")
        if self.is_scalar and arr.shape != (1, 1):
            raise ParameterError("coefficient", arr.shape, "scalar coefficients are 1×1")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @classmethod
    def scalar(cls, value: complex) -> CoeffValue:
        return cls(np.array(value, dtype=complex))

    @classmethod
    def matrix(cls, entries) -> CoeffValue:
        return cls(np.array(entries, dtype=complex), is_scalar=False)

    @classmethod
    def identity(cls, k: int) -> CoeffValue:
        return cls.scalar(1.0) if k == 1 else cls.matrix(np.eye(k))

    @classmethod
    def zero(cls, k: int, is_scalar: bool) -> CoeffValue:
        return cls.scalar(0.0) if is_scalar else cls.matrix(np.zeros((k, k)))

    @property
    def k(self) -> int:
        return self.data.shape[0]

    @property
    def kind(self) -> Literal["scalar", "matrix"]:
        return "scalar" if self.is_scalar else "matrix"

    def to_complex(self) -> complex:
        if not self.is_scalar:
            raise ParameterError("coefficient", "matrix", "has no scalar value")
        return complex(self.data[0, 0])

    def adjoint(self) -> CoeffValue:
        return CoeffValue(self.data.conj().T, is_scalar=self.is_scalar)

    def real_part(self) -> CoeffValue:
        """(x + x*)/2."""
        return CoeffValue((self.data + self.data.conj().T) / 2, is_scalar=self.is_scalar)

    def operator_norm(self) -> float:
        return operator_norm(self)

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def same_kind(self, other: CoeffValue) -> bool:
        return self.is_scalar == other.is_scalar and self.k == other.k

    def _combine(self, other: CoeffValue, sign: float) -> CoeffValue:
        if not self.same_kind(other):
            raise ParameterError("coefficient", other.kind, f"cannot combine with {self.kind} of size {self.k}")
        return CoeffValue(self.data + sign * other.data, is_scalar=self.is_scalar)

    def __add__(self, other: CoeffValue) -> CoeffValue:
        return self._combine(other, 1.0)

    def __sub__(self, other: CoeffValue) -> CoeffValue:
        return self._combine(other, -1.0)

    def __neg__(self) -> CoeffValue:
        return CoeffValue(-self.data, is_scalar=self.is_scalar)

    def __mul__(self, c: complex) -> CoeffValue:
        return CoeffValue(self.data * complex(c), is_scalar=self.is_scalar)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffValue):
            return NotImplemented
        return self.same_kind(other) and np.array_equal(self.data, other.data)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.is_scalar:
            return f"CoeffValue.scalar({self.to_complex()!r})"
        return f"CoeffValue.matrix({self.data.tolist()!r})"


def operator_norm(x: CoeffValue) -> float:
    """Largest singular value; |x| for scalars."""
    if not np.all(np.isfinite(x.data)):
        raise NonFiniteInputError("coefficient")
    if x.is_scalar:
        return float(abs(x.data[0, 0]))
    if x.k <= DIRECT_SVD_LIMIT:
        return float(svdvals(x.data)[0])
    log.debug("Iterative singular value for k=%d", x.k)
    return float(svds(x.data, k=1, return_singular_vectors=False)[0])


def batch_operator_norm(values: np.ndarray) -> np.ndarray:
    """Operator norms of a stack of k×k matrices with shape (N, k, k)."""
    if values.shape[-1] == 1:
        return np.abs(values[..., 0, 0])
    return np.linalg.norm(values, ord=2, axis=(-2, -1))


@dataclass(frozen=True, eq=False)
class BoundedOperatorU:
    """The operator U: X → Y applied to coefficients.

    Either λ₀·I, or a k²×k² matrix acting on row-major vectorized k×k
    coefficients with Y = B(H) under the operator norm. For k > 1 the norm of
    an explicit U is estimated from below on random unitaries, which span the
    unit ball of B(H) by the Russo–Dye theorem.
    """

    kind: Literal["identity_scaled", "matrix"]
    norm_U: float
    scale: float = 1.0
    matrix: np.ndarray | None = None
    k: int | None = None
    norm_certified: bool = True

    @classmethod
    def identity(cls, lam0: float = 1.0) -> BoundedOperatorU:
        if not lam0 >= 0:
            raise ParameterError("lambda0", lam0, "must be ≥ 0")
        return cls(kind="identity_scaled", norm_U=float(lam0), scale=float(lam0))

    @classmethod
    def from_matrix(cls, matrix, k: int, samples: int = 256, seed: int = 0) -> BoundedOperatorU:
        mat = np.array(matrix, dtype=complex)
        if mat.shape != (k * k, k * k):
            raise DimensionMismatchError(k * k, mat.shape[0], "U matrix")
        if not np.all(np.isfinite(mat)):
            raise NonFiniteInputError("U matrix")
        mat.flags.writeable = False
        sigma = float(svdvals(mat)[0])
        if k == 1:
            return cls(kind="matrix", norm_U=sigma, matrix=mat, k=1)

        rng = np.random.default_rng(seed)
        gauss = rng.standard_normal((samples, k, k)) + 1j * rng.standard_normal((samples, k, k))
        unitaries, _ = np.linalg.qr(gauss)
        unitaries = np.concatenate([np.eye(k, dtype=complex)[None], unitaries])
        images = (unitaries.reshape(-1, k * k) @ mat.T).reshape(-1, k, k)
        estimate = float(batch_operator_norm(images).max())
        log.debug("U norm estimate %s (upper %s) from %d unitaries", estimate, sigma * np.sqrt(k), samples)
        return cls(kind="matrix", norm_U=estimate, matrix=mat, k=k, norm_certified=False)

    def apply(self, x: CoeffValue) -> CoeffValue:
        if self.kind == "identity_scaled":
            return x * self.scale
        self._check_k(x.k)
        image = (self.matrix @ x.data.reshape(-1)).reshape(x.k, x.k)
        return CoeffValue(image, is_scalar=x.is_scalar)

    def image_norms(self, coeffs: np.ndarray) -> np.ndarray:
        """‖U(c)‖ for a stack of coefficients with shape (T, k, k)."""
        if coeffs.shape[0] == 0:
            return np.zeros(0)
        if self.kind == "identity_scaled":
            return self.scale * batch_operator_norm(coeffs)
        k = coeffs.shape[-1]
        self._check_k(k)
        images = (coeffs.reshape(-1, k * k) @ self.matrix.T).reshape(-1, k, k)
        return batch_operator_norm(images)

    def describe(self) -> str:
        if self.kind == "identity_scaled":
            return f"{self.scale:g}*I"
        return f"matrix(k={self.k}, norm≈{self.norm_U:.6g})"

    def _check_k(self, k: int) -> None:
        if self.k is not None and k != self.k:
            raise DimensionMismatchError(self.k, k, "coefficient size for U")
