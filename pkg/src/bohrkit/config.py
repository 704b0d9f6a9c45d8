"""TOML configuration loading from ~/.bohrkit/config.toml."""

from __future__ import annotations

from pathlib import Path

import toml
from pydantic import ValidationError

from bohrkit.exceptions import ConfigError
from bohrkit.logger import log
from bohrkit.models.config import AppConfig, BoundConstants, Guardrails, NumericSettings, SamplingBudget

CONFIG_DIR = Path.home() / ".bohrkit"
CONFIG_FILE = CONFIG_DIR / "config.toml"

_DEFAULT_CONFIG_TOML = """\
# bohrkit configuration
seed = 0

# Bisection tolerance for radius estimates
tolerance = 1e-4

# Threads used to evaluate family members concurrently
workers = 1
output_format = "json"

[sampling]
starts = 16
iterations = 60
candidates = 256
step = 0.25
polish = true

[guardrails]
max_vars = 8
max_degree = 8
max_matrix_k = 4

# Overrides for the unspecified constants (E1..E6, E2_prime, E3_prime, d)
[constants]
"""


def load_config() -> AppConfig:
    """Load configuration from ~/.bohrkit/config.toml, creating defaults if missing."""
    if not CONFIG_FILE.exists():
        log.info("No config file found, creating default at %s", CONFIG_FILE)
        try:
            CONFIG_DIR.mkdir(parents=True, exist_ok=True)
            CONFIG_FILE.write_text(_DEFAULT_CONFIG_TOML, encoding="utf-8")
        except OSError as e:
            log.warning("Could not write default config: %s", e)
        return AppConfig()

    try:
        raw = toml.loads(CONFIG_FILE.read_text(encoding="utf-8"))
        log.debug("Loaded config: %s", raw)
        return _parse_raw_config(raw)
    except (toml.TomlDecodeError, ValidationError, TypeError) as e:
        log.warning("Failed to parse config, using defaults: %s", e)
        return AppConfig()


def _parse_raw_config(raw: dict) -> AppConfig:
    """Parse raw TOML dict into AppConfig."""
    numeric = NumericSettings(
        seed=raw.get("seed", 0),
        tolerance=raw.get("tolerance", 1e-4),
        workers=raw.get("workers", 1),
        sampling=SamplingBudget(**raw.get("sampling", {})),
        guardrails=Guardrails(**raw.get("guardrails", {})),
    )
    return AppConfig(
        numeric=numeric,
        constants=BoundConstants(**raw.get("constants", {})),
        output_format=raw.get("output_format", "json"),
    )


def save_config(config: AppConfig) -> None:
    """Save configuration back to ~/.bohrkit/config.toml."""
    CONFIG_DIR.mkdir(parents=True, exist_ok=True)

    data: dict = {
        "seed": config.numeric.seed,
        "tolerance": config.numeric.tolerance,
        "workers": config.numeric.workers,
        "output_format": config.output_format,
        "sampling": config.numeric.sampling.model_dump(),
        "guardrails": config.numeric.guardrails.model_dump(),
        # Only explicitly supplied constants are persisted
        "constants": {name: getattr(config.constants, name) for name in sorted(config.constants.model_fields_set)},
    }

    CONFIG_FILE.write_text(toml.dumps(data), encoding="utf-8")
    log.info("Saved config to %s", CONFIG_FILE)


def load_constants_file(path: str | Path) -> dict[str, float]:
    """Read a `key = value` constants file (`#` comments allowed)."""
    path = Path(path)
    try:
        raw = toml.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"Cannot read constants file {path}: {e}") from e
    except toml.TomlDecodeError as e:
        raise ConfigError(f"Malformed constants file {path}: {e}") from e

    # Accept both a flat file and one with a [constants] table
    values = raw.get("constants", raw)
    result: dict[str, float] = {}
    for key, value in values.items():
        if key not in BoundConstants.model_fields:
            raise ConfigError(f"Unknown constant {key!r} in {path}; valid: {', '.join(BoundConstants.model_fields)}")
        result[key] = float(value)
    log.debug("Constants from %s: %s", path, result)
    return result


def parse_inline_constants(items: tuple[str, ...] | list[str]) -> dict[str, float]:
    """Parse repeated `KEY=VALUE` overrides."""
    result: dict[str, float] = {}
    for item in items:
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in BoundConstants.model_fields:
            raise ConfigError(f"Bad constant override {item!r}; expected KEY=VALUE with KEY in {', '.join(BoundConstants.model_fields)}")
        try:
            result[key] = float(value)
        except ValueError as e:
            raise ConfigError(f"Constant {key} needs a number, got {value!r}") from e
    return result


def merge_constants(
    base: BoundConstants,
    file_values: dict[str, float] | None = None,
    inline_values: dict[str, float] | None = None,
) -> BoundConstants:
    """Apply file overrides then inline overrides; inline wins."""
    overrides: dict[str, float] = {}
    overrides.update(file_values or {})
    overrides.update(inline_values or {})
    try:
        return base.merged(overrides)
    except ValidationError as e:
        raise ConfigError(f"Invalid constants: {e}") from e
