"""Line-oriented text format for polynomials and families.

    # comment
    label mobius-half
    dim 2
    kind matrix 2
    a 1,0 = 0.5,0
    a 0,1 = matrix[[1, 0], [0, 2]]
    b 1,0 = 0.25,-1
    sup 1.0 @ lq:q=inf:n=2

Members of a family file are separated by a line holding only ``---``.
"""

from __future__ import annotations

import ast
import cmath
import math
import re
from pathlib import Path

import numpy as np

from bohrkit.exceptions import BohrError, GrammarError, NonFiniteInputError
from bohrkit.polynomials.coefficients import CoeffValue
from bohrkit.polynomials.multi_index import MultiIndex
from bohrkit.polynomials.poly import KnownSupNorm, PluriharmonicPoly
from bohrkit.spaces.descriptor import SpaceDescriptor

SEPARATOR = "---"
_TERM = re.compile(r"^(?P<part>[ab])\s+(?P<alpha>[\d,\s]+?)\s*=\s*(?P<value>.+)$")


def _format_number(x: float) -> str:
    return repr(float(x))


def _format_coeff(c: CoeffValue) -> str:
    if c.is_scalar:
        z = c.to_complex()
        return f"{_format_number(z.real)},{_format_number(z.imag)}"
    rows = []
    for row in c.data:
        rows.append("[" + ", ".join(_format_entry(x) for x in row) + "]")
    return "matrix[" + ", ".join(rows) + "]"


def _format_entry(x: complex) -> str:
    if x.imag == 0:
        return _format_number(x.real)
    return f"complex({_format_number(x.real)}, {_format_number(x.imag)})"


def dumps(f: PluriharmonicPoly) -> str:
    lines = []
    if f.label:
        lines.append(f"label {f.label}")
    lines.append(f"dim {f.dim}")
    if not f.is_scalar:
        lines.append(f"kind matrix {f.k}")
    for part, alpha, c in f.terms():
        lines.append(f"{part} {alpha} = {_format_coeff(c)}")
    if f.known_sup_norm is not None:
        lines.append(f"sup {_format_number(f.known_sup_norm.value)} @ {f.known_sup_norm.space}")
    return "\n".join(lines) + "\n"


def dump_family(family: list[PluriharmonicPoly]) -> str:
    return f"{SEPARATOR}\n".join(dumps(f) for f in family)


def _complex_literal(match: re.Match) -> str:
    re_part, im_part = float(match.group(1)), float(match.group(2))
    sign = "-" if math.copysign(1.0, im_part) < 0 else "+"
    return f"({re_part!r}{sign}{abs(im_part)!r}j)"


def _literal_matrix(text: str, line: str) -> np.ndarray:
    try:
        # complex(re, im) entries become re±imj literals, which literal_eval accepts
        body = re.sub(r"complex\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)", _complex_literal, text)
        value = ast.literal_eval(body)
    except (ValueError, SyntaxError) as exc:
        raise GrammarError(line, f"bad matrix literal: {exc}") from exc
    return np.array(value, dtype=complex)


def _scalar_part(text: str) -> complex:
    try:
        return complex(float(text))
    except ValueError:
        return complex(text.replace("i", "j"))


def _parse_coeff(text: str, line: str) -> CoeffValue:
    text = text.strip()
    if text.startswith("matrix"):
        data = _literal_matrix(text[len("matrix"):], line)
        if not np.all(np.isfinite(data)):
            raise NonFiniteInputError(f"coefficient line {line!r}")
        return CoeffValue.matrix(data)
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            value = _scalar_part(parts[0])
        elif len(parts) == 2:
            value = complex(float(parts[0]), float(parts[1]))
        else:
            raise GrammarError(line, "scalar coefficients are written as re,im")
    except ValueError as exc:
        raise GrammarError(line, f"bad scalar coefficient: {exc}") from exc
    if not cmath.isfinite(value):
        raise NonFiniteInputError(f"coefficient line {line!r}")
    return CoeffValue.scalar(value)


def loads(text: str) -> PluriharmonicPoly:
    """Parse one polynomial; inverse of `dumps`."""
    label = None
    dim = None
    k, is_scalar = 1, True
    a: dict[MultiIndex, CoeffValue] = {}
    b: dict[MultiIndex, CoeffValue] = {}
    sup_line = None

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "label":
            label = rest
        elif keyword == "dim":
            dim = _parse_int(rest, line)
        elif keyword == "kind":
            fields = rest.split()
            if len(fields) == 2 and fields[0] == "matrix":
                k, is_scalar = _parse_int(fields[1], line), False
            elif fields == ["scalar"]:
                k, is_scalar = 1, True
            else:
                raise GrammarError(line, "expected 'kind scalar' or 'kind matrix K'")
        elif keyword == "sup":
            sup_line = line
        else:
            match = _TERM.match(line)
            if match is None:
                raise GrammarError(line, "expected a term line 'a|b ALPHA = VALUE'")
            try:
                alpha = MultiIndex.parse(match["alpha"])
            except (ValueError, BohrError) as exc:
                raise GrammarError(line, f"bad multi-index: {exc}") from exc
            target = a if match["part"] == "a" else b
            if alpha in target:
                raise GrammarError(line, f"duplicate {match['part']}-coefficient at {alpha}")
            target[alpha] = _parse_coeff(match["value"], line)

    indices = [*a, *b]
    if dim is None:
        if not indices:
            raise GrammarError(text.strip() or "<empty>", "empty polynomial needs a 'dim N' line")
        dim = indices[0].dim
    f = PluriharmonicPoly(dim, a, b, label=label, k=k, is_scalar=is_scalar)
    if sup_line is not None:
        f = f.with_known_sup_norm(*_parse_sup(sup_line))
    return f


def _parse_int(text: str, line: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise GrammarError(line, f"expected an integer, got {text!r}") from exc


def _parse_sup(line: str) -> tuple[float, SpaceDescriptor]:
    value, sep, grammar = line[len("sup"):].partition("@")
    if not sep:
        raise GrammarError(line, "expected 'sup VALUE @ SPACE'")
    try:
        return float(value), SpaceDescriptor.parse(grammar.strip())
    except ValueError as exc:
        raise GrammarError(line, f"bad sup value: {exc}") from exc


def loads_family(text: str) -> list[PluriharmonicPoly]:
    chunks = re.split(rf"^\s*{re.escape(SEPARATOR)}\s*$", text, flags=re.MULTILINE)
    return [loads(chunk) for chunk in chunks if _has_content(chunk)]


def _has_content(chunk: str) -> bool:
    return any(line.split("#", 1)[0].strip() for line in chunk.splitlines())


def read_family(path: str | Path) -> list[PluriharmonicPoly]:
    """Read a family file; a file with a single polynomial yields a one-member family."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GrammarError(str(path), f"cannot read polynomial file: {exc}") from exc
    return loads_family(text)


def write_family(path: str | Path, family: list[PluriharmonicPoly]) -> None:
    Path(path).write_text(dump_family(family), encoding="utf-8")
