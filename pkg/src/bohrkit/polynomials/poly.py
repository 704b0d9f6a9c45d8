"""Pluriharmonic polynomials f = h + ḡ with scalar or matrix coefficients."""

from __future__ import annotations

import hashlib
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType

import numpy as np

from bohrkit.core.utils import as_complex_vector
from bohrkit.exceptions import DimensionMismatchError, ParameterError
from bohrkit.polynomials.coefficients import CoeffValue
from bohrkit.polynomials.multi_index import MultiIndex, monomial_table
from bohrkit.spaces.descriptor import SpaceDescriptor

MajorantOracle = Callable[[float], float]


@dataclass(frozen=True)
class KnownSupNorm:
    """An analytically known value of sup ‖f(z)‖ over a domain."""

    value: float
    space: SpaceDescriptor


class PluriharmonicPoly:
    """f(z) = Σ a_α z^α + Σ b*_α z̄^α, finitely supported.

    Immutable after construction. Zero coefficients are dropped; b never has
    an entry at α = 0 (it would merge into a₀).
    """

    def __init__(
        self,
        dim: int,
        a: Mapping[MultiIndex, CoeffValue] | None = None,
        b: Mapping[MultiIndex, CoeffValue] | None = None,
        *,
        label: str | None = None,
        known_sup_norm: KnownSupNorm | None = None,
        majorant_oracle: MajorantOracle | None = None,
        k: int = 1,
        is_scalar: bool = True,
    ):
        if dim < 1:
            raise ParameterError("dim", dim, "must be ≥ 1")
        self.dim = dim
        a = dict(a or {})
        b = dict(b or {})
        for alpha in [*a, *b]:
            if alpha.dim != dim:
                raise DimensionMismatchError(dim, alpha.dim, f"multi-index {alpha}")
        if any(alpha.degree == 0 for alpha in b):
            raise ParameterError("b", "α=0", "the anti-holomorphic part has no constant term")

        coeffs = [*a.values(), *b.values()]
        if coeffs:
            first = coeffs[0]
            if any(not c.same_kind(first) for c in coeffs):
                raise ParameterError("coefficients", "mixed kinds", "all coefficients must share kind and size")
            k, is_scalar = first.k, first.is_scalar

        self.k = k
        self.is_scalar = is_scalar
        self.a: Mapping[MultiIndex, CoeffValue] = MappingProxyType(
            {alpha: a[alpha] for alpha in sorted(a) if not a[alpha].is_zero()}
        )
        self.b: Mapping[MultiIndex, CoeffValue] = MappingProxyType(
            {alpha: b[alpha] for alpha in sorted(b) if not b[alpha].is_zero()}
        )
        self.label = label
        self.known_sup_norm = known_sup_norm
        self.majorant_oracle = majorant_oracle

    # -- structure -----------------------------------------------------------

    @property
    def coeff_kind(self) -> str:
        return "scalar" if self.is_scalar else f"matrix({self.k})"

    @property
    def is_zero(self) -> bool:
        return not self.a and not self.b

    @property
    def is_holomorphic(self) -> bool:
        return not self.b

    def degrees(self) -> list[int]:
        return sorted({alpha.degree for alpha in [*self.a, *self.b]})

    @property
    def max_degree(self) -> int:
        degrees = self.degrees()
        return degrees[-1] if degrees else 0

    @property
    def homogeneous_degree(self) -> int | None:
        """m when every stored α has |α| = m; None for the zero or mixed-degree polynomial."""
        degrees = self.degrees()
        return degrees[0] if len(degrees) == 1 else None

    def support(self) -> set[int]:
        """Variables that occur in some stored monomial."""
        return {i for alpha in [*self.a, *self.b] for i in alpha.support}

    @property
    def constant_term(self) -> CoeffValue:
        return self.a.get(MultiIndex.zero(self.dim), CoeffValue.zero(self.k, self.is_scalar))

    def indices(self) -> list[MultiIndex]:
        """Union of the a- and b-indices in graded order."""
        return sorted(set(self.a) | set(self.b))

    def terms(self) -> Iterator[tuple[str, MultiIndex, CoeffValue]]:
        for alpha, c in self.a.items():
            yield "a", alpha, c
        for alpha, c in self.b.items():
            yield "b", alpha, c

    def fingerprint(self) -> str:
        """Stable content hash of the coefficients."""
        digest = hashlib.sha1(f"{self.dim}|{self.k}|{self.is_scalar}".encode())
        for part, alpha, c in self.terms():
            digest.update(f"{part}{alpha}=".encode())
            digest.update(np.ascontiguousarray(c.data).tobytes())
        return digest.hexdigest()

    @property
    def function_id(self) -> str:
        return self.label or f"poly-{self.fingerprint()[:12]}"

    # -- dense views -----------------------------------------------------------

    @cached_property
    def _dense_a(self) -> tuple[np.ndarray, np.ndarray]:
        return _stack(self.a, self.dim, self.k)

    @cached_property
    def _dense_b_adjoint(self) -> tuple[np.ndarray, np.ndarray]:
        exps, coeffs = _stack(self.b, self.dim, self.k)
        return exps, np.conj(np.swapaxes(coeffs, -1, -2))

    @cached_property
    def dense_union(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(exponents, a-stack, b-stack) over the union of indices, zeros where absent."""
        indices = self.indices()
        exps = np.array([alpha.entries for alpha in indices], dtype=int).reshape(len(indices), self.dim)
        zero = np.zeros((self.k, self.k), dtype=complex)
        a_stack = np.array([self.a[alpha].data if alpha in self.a else zero for alpha in indices]).reshape(-1, self.k, self.k)
        b_stack = np.array([self.b[alpha].data if alpha in self.b else zero for alpha in indices]).reshape(-1, self.k, self.k)
        return exps, a_stack, b_stack

    # -- evaluation ------------------------------------------------------------

    def evaluate_batch(self, z: np.ndarray) -> np.ndarray:
        """f at each row of z (N, n); shape (N, k, k)."""
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        if z.shape[1] != self.dim:
            raise DimensionMismatchError(self.dim, z.shape[1])
        out = np.zeros((z.shape[0], self.k, self.k), dtype=complex)
        exps_a, coef_a = self._dense_a
        if exps_a.shape[0]:
            out += np.einsum("nt,tij->nij", monomial_table(z, exps_a), coef_a)
        exps_b, coef_b = self._dense_b_adjoint
        if exps_b.shape[0]:
            out += np.einsum("nt,tij->nij", np.conj(monomial_table(z, exps_b)), coef_b)
        return out

    def evaluate(self, z) -> CoeffValue:
        arr = as_complex_vector(z)
        if arr.size != self.dim:
            raise DimensionMismatchError(self.dim, arr.size)
        return CoeffValue(self.evaluate_batch(arr[None, :])[0], is_scalar=self.is_scalar)

    # -- derived polynomials ---------------------------------------------------

    def homogeneous_part(self, m: int) -> PluriharmonicPoly:
        """Terms with |α| = m; the b-part is empty for m = 0."""
        if m < 0:
            raise ParameterError("m", m, "must be ≥ 0")
        return self._derive(
            {alpha: c for alpha, c in self.a.items() if alpha.degree == m},
            {alpha: c for alpha, c in self.b.items() if alpha.degree == m},
            label=f"{self.function_id}[m={m}]" if self.label else None,
        )

    def signed_part(self, m: int, sign: int) -> PluriharmonicPoly:
        """The holomorphic polynomial Σ_{|α|=m} (a_α ± b_α) z^α."""
        if sign not in (1, -1):
            raise ParameterError("sign", sign, "must be +1 or -1")
        zero = CoeffValue.zero(self.k, self.is_scalar)
        combined = {}
        for alpha in self.indices():
            if alpha.degree == m:
                combined[alpha] = self.a.get(alpha, zero) + self.b.get(alpha, zero) * sign
        return self._derive(combined, {})

    def scaled(self, c: complex) -> PluriharmonicPoly:
        """c·f; a known sup norm scales by |c|."""
        known = self.known_sup_norm
        if known is not None:
            known = KnownSupNorm(abs(c) * known.value, known.space)
        oracle = None
        if self.majorant_oracle is not None and c != 0:
            base = self.majorant_oracle
            oracle = lambda r: abs(c) * base(r)  # noqa: E731
        # b_α carries the adjoint, so b scales by the conjugate of c
        return PluriharmonicPoly(
            self.dim,
            {alpha: v * c for alpha, v in self.a.items()},
            {alpha: v * np.conj(c) for alpha, v in self.b.items()},
            label=self.label, known_sup_norm=known, majorant_oracle=oracle,
            k=self.k, is_scalar=self.is_scalar,
        )

    def with_known_sup_norm(self, value: float, space: SpaceDescriptor) -> PluriharmonicPoly:
        return PluriharmonicPoly(
            self.dim, self.a, self.b, label=self.label,
            known_sup_norm=KnownSupNorm(float(value), space),
            majorant_oracle=self.majorant_oracle, k=self.k, is_scalar=self.is_scalar,
        )

    def __add__(self, other: PluriharmonicPoly) -> PluriharmonicPoly:
        return self._merge(other, 1.0)

    def __sub__(self, other: PluriharmonicPoly) -> PluriharmonicPoly:
        return self._merge(other, -1.0)

    def _merge(self, other: PluriharmonicPoly, sign: float) -> PluriharmonicPoly:
        if other.dim != self.dim:
            raise DimensionMismatchError(self.dim, other.dim, "polynomial")
        a = dict(self.a)
        for alpha, c in other.a.items():
            a[alpha] = a[alpha] + c * sign if alpha in a else c * sign
        b = dict(self.b)
        for alpha, c in other.b.items():
            b[alpha] = b[alpha] + c * sign if alpha in b else c * sign
        kind = self if not self.is_zero else other
        return PluriharmonicPoly(self.dim, a, b, k=kind.k, is_scalar=kind.is_scalar)

    def _derive(self, a: dict, b: dict, label: str | None = None) -> PluriharmonicPoly:
        return PluriharmonicPoly(self.dim, a, b, label=label, k=self.k, is_scalar=self.is_scalar)

    def __repr__(self) -> str:
        return f"PluriharmonicPoly({self.function_id}, dim={self.dim}, kind={self.coeff_kind}, terms={len(self.a) + len(self.b)})"


def _stack(coeffs: Mapping[MultiIndex, CoeffValue], dim: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    if not coeffs:
        return np.zeros((0, dim), dtype=int), np.zeros((0, k, k), dtype=complex)
    exps = np.array([alpha.entries for alpha in coeffs], dtype=int)
    values = np.array([c.data for c in coeffs.values()])
    return exps, values


def evaluate(f: PluriharmonicPoly, z) -> CoeffValue:
    """Σ a_α z^α + Σ b*_α z̄^α."""
    return f.evaluate(z)


def homogeneous_part(f: PluriharmonicPoly, m: int) -> PluriharmonicPoly:
    return f.homogeneous_part(m)
