"""Sequence-space descriptors and their text grammar.

A descriptor names one of four norm families on ℂⁿ together with its
parameters and an optional scale r, so that it also stands for the domain
r·B_Z. The grammar is ``kind:key=value:...``::

    lq:q=2:n=8
    mixed:s=1:m=2:t=2:n=3        # n is the inner dimension, dim = m·n
    lorentz:s=2:t=1:n=4
    orlicz:psi=x^2:n=4
    lq:q=inf:n=2:scale=2
"""

from __future__ import annotations

import ast
import math
import operator
from collections.abc import Callable
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError, model_validator

from bohrkit.core.utils import format_float
from bohrkit.exceptions import GrammarError, ParameterError

SpaceKind = Literal["lq", "mixed", "lorentz", "orlicz"]

_BINARY_OPS: dict[type, Callable] = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}

_SAMPLE_GRID = np.geomspace(1e-3, 1e3, 241)


def _compile_expression(expr: str) -> Callable[[np.ndarray], np.ndarray]:
    """Compile a ψ expression in the variable x using only +, -, *, /, ^ and numbers."""
    source = expr.replace("^", "**").strip()
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as e:
        raise GrammarError(expr, f"invalid expression ({e.msg})") from e

    def build(node: ast.AST) -> Callable[[np.ndarray], np.ndarray]:
        if isinstance(node, ast.Expression):
            return build(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            constant = float(node.value)
            return lambda x: np.full_like(x, constant, dtype=float)
        if isinstance(node, ast.Name) and node.id == "x":
            return lambda x: x
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = build(node.operand)
            sign = -1.0 if isinstance(node.op, ast.USub) else 1.0
            return lambda x: sign * inner(x)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINARY_OPS:
            if isinstance(node.op, ast.Pow) and not isinstance(node.right, ast.Constant):
                raise GrammarError(expr, "exponents must be numeric constants")
            left, right = build(node.left), build(node.right)
            op = _BINARY_OPS[type(node.op)]
            return lambda x: op(left(x), right(x))
        raise GrammarError(expr, f"unsupported element {type(node).__name__}")

    return build(tree)


class OrliczFunction(BaseModel):
    """A Young function ψ given by a safe expression in x.

    ψ(0) = 0, strict increase, convexity and the Δ₂ condition are checked on a
    geometric sample grid over [10⁻³, 10³]. Without a declared ``delta2_bound``
    the sampled supremum of ψ(2a)/ψ(a) is used.
    """

    model_config = ConfigDict(frozen=True)

    expr: str
    delta2_bound: float | None = Field(default=None, gt=0)

    _func: Callable[[np.ndarray], np.ndarray] = PrivateAttr()
    _delta2: float = PrivateAttr()
    _inverse_cache: dict[float, float] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _validate_shape(self) -> OrliczFunction:
        func = _compile_expression(self.expr)
        grid = np.concatenate([[0.0], _SAMPLE_GRID])
        with np.errstate(all="ignore"):
            values = np.asarray(func(grid), dtype=float)
        if not np.all(np.isfinite(values)):
            raise ValueError(f"ψ={self.expr} is not finite on [0, 1e3]")
        if values[0] != 0.0:
            raise ValueError(f"ψ(0) must be 0, got {values[0]}")
        if np.any(np.diff(values) <= 0):
            raise ValueError(f"ψ={self.expr} is not strictly increasing")
        # Convexity: slopes between consecutive grid points never decrease
        slopes = np.diff(values) / np.diff(grid)
        if np.any(np.diff(slopes) < -1e-9 * np.abs(slopes[1:])):
            raise ValueError(f"ψ={self.expr} is not convex")
        ratios = func(2 * _SAMPLE_GRID) / func(_SAMPLE_GRID)
        sampled = float(ratios.max())
        if self.delta2_bound is not None and sampled > self.delta2_bound * (1 + 1e-9):
            raise ValueError(f"Δ₂ check failed: ψ(2a)/ψ(a) reaches {sampled:.6g} > {self.delta2_bound}")
        self._func = func
        self._delta2 = self.delta2_bound if self.delta2_bound is not None else sampled
        return self

    @property
    def delta2(self) -> float:
        return self._delta2

    def __call__(self, x: np.ndarray | float) -> np.ndarray:
        return self._func(np.asarray(x, dtype=float))

    def inverse(self, y: float) -> float:
        """ψ⁻¹(y), cached per value."""
        if y not in self._inverse_cache:
            from bohrkit.spaces.norms import orlicz_inverse

            self._inverse_cache[y] = orlicz_inverse(self, y)
        return self._inverse_cache[y]


class SpaceDescriptor(BaseModel):
    """A finite-dimensional 1-unconditional sequence-space norm, optionally scaled."""

    model_config = ConfigDict(frozen=True)

    kind: SpaceKind
    dim: int = Field(ge=1)
    q: float | None = None
    s: float | None = None
    t: float | None = None
    m: int | None = None
    n_inner: int | None = None
    psi: OrliczFunction | None = None
    scale: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _validate_kind(self) -> SpaceDescriptor:
        if self.kind == "lq":
            _need_exponent("q", self.q)
        elif self.kind == "mixed":
            _need_exponent("s", self.s)
            _need_exponent("t", self.t)
            if not self.m or not self.n_inner or self.m < 1 or self.n_inner < 1:
                raise ValueError("mixed spaces need m ≥ 1 and n ≥ 1")
            if self.dim != self.m * self.n_inner:
                raise ValueError(f"mixed dim must be m·n = {self.m * self.n_inner}")
        elif self.kind == "lorentz":
            _need_exponent("s", self.s)
            _need_exponent("t", self.t)
        elif self.psi is None:
            raise ValueError("orlicz spaces need psi")
        return self

    # -- constructors -----------------------------------------------------

    @classmethod
    def lq(cls, q: float, n: int, scale: float = 1.0) -> SpaceDescriptor:
        return _build(kind="lq", dim=n, q=float(q), scale=scale)

    @classmethod
    def polydisc(cls, n: int, scale: float = 1.0) -> SpaceDescriptor:
        return cls.lq(math.inf, n, scale)

    @classmethod
    def mixed(cls, m: int, s: float, n_inner: int, t: float, scale: float = 1.0) -> SpaceDescriptor:
        return _build(kind="mixed", dim=m * n_inner, m=m, s=float(s), n_inner=n_inner, t=float(t), scale=scale)

    @classmethod
    def lorentz(cls, s: float, t: float, n: int, scale: float = 1.0) -> SpaceDescriptor:
        return _build(kind="lorentz", dim=n, s=float(s), t=float(t), scale=scale)

    @classmethod
    def orlicz(
        cls,
        psi: str | OrliczFunction,
        n: int,
        scale: float = 1.0,
        delta2_bound: float | None = None,
    ) -> SpaceDescriptor:
        if isinstance(psi, str):
            try:
                psi = OrliczFunction(expr=psi, delta2_bound=delta2_bound)
            except ValidationError as e:
                raise ParameterError("psi", psi, _first_error(e)) from e
        return _build(kind="orlicz", dim=n, psi=psi, scale=scale)

    @classmethod
    def parse(cls, text: str) -> SpaceDescriptor:
        """Parse the ``kind:key=value`` grammar."""
        parts = [part.strip() for part in text.strip().split(":")]
        kind = parts[0].lower()
        if kind == "minkowski":
            kind = "lq"
        fields: dict[str, str] = {}
        for part in parts[1:]:
            key, sep, value = part.partition("=")
            if not sep or not value:
                raise GrammarError(text, f"expected key=value, got {part!r}")
            fields[key.strip()] = value.strip()

        expected = {
            "lq": ({"q", "n"}, {"scale"}),
            "mixed": ({"s", "m", "t", "n"}, {"scale"}),
            "lorentz": ({"s", "t", "n"}, {"scale"}),
            "orlicz": ({"psi", "n"}, {"scale", "delta2"}),
        }
        if kind not in expected:
            raise GrammarError(text, f"unknown kind {kind!r}; expected one of lq, mixed, lorentz, orlicz")
        required, optional = expected[kind]
        missing = required - fields.keys()
        unknown = fields.keys() - required - optional
        if missing:
            raise GrammarError(text, f"missing {', '.join(sorted(missing))}")
        if unknown:
            raise GrammarError(text, f"unknown key(s) {', '.join(sorted(unknown))}")

        try:
            scale = _parse_real(fields.get("scale", "1"))
            if kind == "lq":
                return cls.lq(_parse_real(fields["q"]), _parse_int(fields["n"]), scale)
            if kind == "mixed":
                return cls.mixed(
                    _parse_int(fields["m"]), _parse_real(fields["s"]),
                    _parse_int(fields["n"]), _parse_real(fields["t"]), scale,
                )
            if kind == "lorentz":
                return cls.lorentz(_parse_real(fields["s"]), _parse_real(fields["t"]), _parse_int(fields["n"]), scale)
            delta2 = _parse_real(fields["delta2"]) if "delta2" in fields else None
            return cls.orlicz(fields["psi"], _parse_int(fields["n"]), scale, delta2)
        except (ParameterError, ValueError) as e:
            raise GrammarError(text, str(e)) from e

    # -- derived forms -----------------------------------------------------

    def __str__(self) -> str:
        if self.kind == "lq":
            body = f"lq:q={format_float(self.q)}:n={self.dim}"
        elif self.kind == "mixed":
            body = f"mixed:s={format_float(self.s)}:m={self.m}:t={format_float(self.t)}:n={self.n_inner}"
        elif self.kind == "lorentz":
            body = f"lorentz:s={format_float(self.s)}:t={format_float(self.t)}:n={self.dim}"
        else:
            body = f"orlicz:psi={self.psi.expr}:n={self.dim}"
            if self.psi.delta2_bound is not None:
                body += f":delta2={format_float(self.psi.delta2_bound)}"
        if self.scale != 1.0:
            body += f":scale={format_float(self.scale)}"
        return body

    def with_dim(self, n: int) -> SpaceDescriptor:
        """Same family and parameters in dimension n (inner dimension for mixed)."""
        if self.kind == "mixed":
            return self.mixed(self.m, self.s, n, self.t, self.scale)
        return _build(**{**self._fields(), "dim": n})

    def scaled(self, r: float) -> SpaceDescriptor:
        """The domain r·Ω."""
        return _build(**{**self._fields(), "scale": self.scale * r})

    def unit(self) -> SpaceDescriptor:
        """The unscaled unit ball of the same norm."""
        return _build(**{**self._fields(), "scale": 1.0})

    def same_norm(self, other: SpaceDescriptor) -> bool:
        """True when both describe the same norm, ignoring scale."""
        return str(self.unit()) == str(other.unit())

    @property
    def is_polydisc(self) -> bool:
        return self.kind == "lq" and math.isinf(self.q)

    @property
    def lp_exponent(self) -> float | None:
        """The exponent when the norm is a plain ℓ_q norm, else None."""
        if self.kind == "lq":
            return self.q
        if self.kind == "lorentz" and self.s == self.t:
            return self.s
        if self.kind == "mixed" and self.s == self.t:
            return self.s
        return None

    def _fields(self) -> dict:
        return {
            "kind": self.kind, "dim": self.dim, "q": self.q, "s": self.s, "t": self.t,
            "m": self.m, "n_inner": self.n_inner, "psi": self.psi, "scale": self.scale,
        }


def _build(**fields) -> SpaceDescriptor:
    try:
        return SpaceDescriptor(**fields)
    except ValidationError as e:
        raise ParameterError("space", {k: v for k, v in fields.items() if v is not None and k != "psi"}, _first_error(e)) from e


def _first_error(error: ValidationError) -> str:
    first = error.errors()[0]
    return str(first.get("msg", error))


def _need_exponent(name: str, value: float | None) -> None:
    if value is None or not value >= 1:
        raise ValueError(f"{name} must be ≥ 1 (or inf), got {value}")


def _parse_real(text: str) -> float:
    lowered = text.lower()
    if lowered in ("inf", "infinity", "∞"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"not a number: {text!r}") from None


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"not an integer: {text!r}") from None
