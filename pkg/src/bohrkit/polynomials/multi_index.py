"""Multi-indices α ∈ ℕ₀ⁿ in graded lexicographic order."""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from functools import total_ordering

import numpy as np

from bohrkit.exceptions import ParameterError


@total_ordering
@dataclass(frozen=True)
class MultiIndex:
    """Exponent vector α with total degree |α|.

    Ordering is graded lexicographic: lower degree first, then larger leading
    exponents first, so (1,0) precedes (0,1).
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise ParameterError("alpha", self.entries, "needs at least one entry")
        if any(e < 0 for e in entries):
            raise ParameterError("alpha", self.entries, "entries must be nonnegative")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> MultiIndex:
        return cls(tuple(entries))

    @classmethod
    def zero(cls, n: int) -> MultiIndex:
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, j: int) -> MultiIndex:
        entries = [0] * n
        entries[j] = 1
        return cls(tuple(entries))

    @classmethod
    def parse(cls, text: str) -> MultiIndex:
        try:
            return cls(tuple(int(part) for part in text.split(",")))
        except ValueError:
            raise ParameterError("alpha", text, "expected comma-separated integers") from None

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return sum(self.entries)

    @property
    def support(self) -> tuple[int, ...]:
        """Coordinates with a nonzero exponent."""
        return tuple(i for i, e in enumerate(self.entries) if e)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return self.degree, tuple(-e for e in self.entries)

    def __lt__(self, other: MultiIndex) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)

    def rho(self, q: float) -> float:
        """(|α|^{|α|} / α^α)^{1/q}, the coefficient weight on ℓ_q balls; 1 for q = ∞."""
        if math.isinf(q):
            return 1.0
        m = self.degree
        log_ratio = _xlogx(m) - sum(_xlogx(e) for e in self.entries)
        return math.exp(log_ratio / q)


def _xlogx(x: int) -> float:
    return x * math.log(x) if x > 0 else 0.0


def homogeneous_indices(n: int, m: int) -> Iterator[MultiIndex]:
    """All α with |α| = m in graded lexicographic order."""

    def compositions(remaining: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield (remaining,)
            return
        for first in range(remaining, -1, -1):
            for rest in compositions(remaining - first, slots - 1):
                yield (first, *rest)

    for entries in compositions(m, n):
        yield MultiIndex(entries)


def indices_up_to(n: int, max_degree: int) -> Iterator[MultiIndex]:
    """All α with |α| ≤ max_degree, degree by degree."""
    for m in range(max_degree + 1):
        yield from homogeneous_indices(n, m)


def monomial_table(z: np.ndarray, exponents: np.ndarray) -> np.ndarray:
    """z^α for every row of z (N, n) and every exponent row (T, n); shape (N, T).

    Powers come from cumulative products, so 0⁰ = 1 exactly.
    """
    z = np.atleast_2d(z)
    n_rows, dim = z.shape
    if exponents.shape[0] == 0:
        return np.zeros((n_rows, 0), dtype=z.dtype)
    top = int(exponents.max())
    stacked = np.concatenate(
        [np.ones((n_rows, dim, 1), dtype=z.dtype), np.repeat(z[:, :, None], top, axis=2)],
        axis=2,
    )
    powers = np.cumprod(stacked, axis=2)
    gathered = powers[:, np.arange(dim)[None, :], exponents]
    return np.prod(gathered, axis=2)
