"""Shared option types, parsers and error handling for the CLI commands."""

from __future__ import annotations

import functools
import math
import re
from pathlib import Path

import click
from pydantic import ValidationError

from bohrkit.config import load_config, load_constants_file, merge_constants, parse_inline_constants
from bohrkit.exceptions import VALIDATION_ERRORS, GrammarError
from bohrkit.logger import log
from bohrkit.models.config import AppConfig, BoundConstants
from bohrkit.output.console import error_console
from bohrkit.spaces.descriptor import SpaceDescriptor

EXIT_VALIDATION = 2
EXIT_NUMERIC = 3
EXIT_VERIFY_BASE = 9
EXIT_VERIFY_CAP = 99

_RANGE = re.compile(r"^\s*(?P<start>\d+)\s*\.\.\s*(?P<stop>\d+)\s*(?::\s*(?P<op>[x+])\s*(?P<step>\d+)\s*)?$")


class RealType(click.ParamType):
    """A real number that also accepts ``inf``."""

    name = "real"

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            return value
        text = str(value).strip().lower()
        if text in ("inf", "infinity", "∞"):
            return math.inf
        try:
            return float(text)
        except ValueError:
            self.fail(f"{value!r} is not a number (use 'inf' for ∞)", param, ctx)


class SpaceType(click.ParamType):
    """A space in the ``kind:key=value`` grammar."""

    name = "space"

    def convert(self, value, param, ctx):
        if isinstance(value, SpaceDescriptor):
            return value
        try:
            return SpaceDescriptor.parse(value)
        except VALIDATION_ERRORS as e:
            self.fail(str(e), param, ctx)


REAL = RealType()
SPACE = SpaceType()


def parse_n_range(text: str) -> list[int]:
    """``A..B`` (step 1), ``A..B:+K`` (arithmetic) or ``A..B:xK`` (geometric)."""
    match = _RANGE.match(text)
    if match is None:
        raise GrammarError(text, "expected A..B, A..B:+K or A..B:xK")
    start, stop = int(match["start"]), int(match["stop"])
    op, step = match["op"] or "+", int(match["step"] or 1)
    if start < 1:
        raise GrammarError(text, "dimensions start at 1")
    if op == "x" and step < 2 or op == "+" and step < 1:
        raise GrammarError(text, "step must advance the range")
    values = []
    n = start
    while n <= stop:
        values.append(n)
        n = n * step if op == "x" else n + step
    if not values:
        raise GrammarError(text, "range is empty")
    return values


def resolve_constants(config: AppConfig, inline: tuple[str, ...], constants_file: str | None) -> BoundConstants:
    """Config constants, then the constants file, then inline overrides."""
    file_values = load_constants_file(constants_file) if constants_file else None
    return merge_constants(config.constants, file_values, parse_inline_constants(inline))


def emit(text: str, output_path: str | None) -> None:
    """Write to the output file or stdout; one stream per run."""
    if output_path:
        Path(output_path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        log.info("Wrote output to %s", output_path)
    else:
        click.echo(text.rstrip("\n"))


def verification_exit_code(failures: int) -> int:
    return 0 if failures == 0 else min(EXIT_VERIFY_BASE + failures, EXIT_VERIFY_CAP)


def handle_errors(func):
    """Map validation errors to exit code 2 with the message on stderr."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except VALIDATION_ERRORS as e:
            log.info("Validation failure in %s: %s", func.__name__, e)
            error_console.print(f"[status.fail]Error:[/status.fail] {e}")
            raise SystemExit(EXIT_VALIDATION) from None
        except ValidationError as e:
            log.info("Validation failure in %s: %s", func.__name__, e)
            error_console.print(f"[status.fail]Invalid parameters:[/status.fail] {_pydantic_summary(e)}")
            raise SystemExit(EXIT_VALIDATION) from None

    return wrapper


def _pydantic_summary(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(x) for x in item["loc"])
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def output_options(func):
    """--format / --output, shared by every command."""
    func = click.option("--output", "output_path", default=None, type=click.Path(dir_okay=False), help="Write to a file instead of stdout")(func)
    func = click.option("--format", "output_format", type=click.Choice(["json", "csv", "table"]), default=None, help="Output format (default from config)")(func)
    return func


def constants_options(func):
    """--const KEY=VALUE (repeatable) and --constants-file PATH."""
    func = click.option("--constants-file", default=None, type=click.Path(exists=True, dir_okay=False), help="key = value constants file")(func)
    func = click.option("--const", "consts", multiple=True, help="Override a constant, e.g. E3=0.5 (repeatable)")(func)
    return func