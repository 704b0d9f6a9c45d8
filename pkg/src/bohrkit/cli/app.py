"""Main Click group entry point for the bohrkit CLI."""

from __future__ import annotations

import click

from bohrkit import __version__
from bohrkit.cli.bounds_cmd import bounds
from bohrkit.cli.estimate_cmd import estimate
from bohrkit.cli.norms_cmd import norms
from bohrkit.cli.sweep_cmd import sweep
from bohrkit.cli.verify_cmd import verify

NUMERIC_KEYS = ("seed", "tolerance", "workers")


@click.group()
@click.version_option(__version__, prog_name="bohrkit")
def cli() -> None:
    """bohrkit — Bohr radius bounds for pluriharmonic mappings.

    Evaluate closed-form bounds, compute space invariants, estimate radii
    empirically over test families and run the verification suites.
    """


def _make_config_group() -> click.Group:
    """Create the config subcommand group."""

    @click.group()
    def config() -> None:
        """View and modify bohrkit configuration."""

    @config.command("show")
    def config_show() -> None:
        """Display current configuration."""
        from bohrkit.config import CONFIG_FILE, load_config
        from bohrkit.output.console import console

        cfg = load_config()
        numeric = cfg.numeric
        console.print(f"\n[header]bohrkit configuration[/header] ({CONFIG_FILE})\n")
        console.print(f"  seed: {numeric.seed}")
        console.print(f"  tolerance: {numeric.tolerance:g}")
        console.print(f"  workers: {numeric.workers}")
        console.print(f"  output_format: {cfg.output_format}")
        console.print(f"  sampling: {numeric.sampling.model_dump()}")
        console.print(f"  guardrails: {numeric.guardrails.model_dump()}")
        supplied = sorted(cfg.constants.model_fields_set)
        if supplied:
            console.print("  constants:")
            for name in supplied:
                console.print(f"    {name} = {getattr(cfg.constants, name):g}")
        else:
            console.print("  constants: [status.shape]all default (asymptotic shapes only)[/status.shape]")
        console.print()

    @config.command("set")
    @click.argument("key")
    @click.argument("value")
    def config_set(key: str, value: str) -> None:
        """Set a configuration value (e.g., 'tolerance 1e-6' or 'constants.E1 0.5')."""
        from pydantic import ValidationError

        from bohrkit.config import load_config, merge_constants, save_config
        from bohrkit.exceptions import ConfigError
        from bohrkit.models.config import AppConfig
        from bohrkit.output.console import console, error_console

        cfg = load_config()
        data = cfg.model_dump(exclude={"constants"})
        section, _, field = key.partition(".")

        try:
            if key in NUMERIC_KEYS:
                data["numeric"][key] = value
            elif key == "output_format":
                data["output_format"] = value
            elif section in ("sampling", "guardrails") and field in data["numeric"][section]:
                data["numeric"][section][field] = value
            elif section == "constants":
                cfg = cfg.model_copy(update={"constants": merge_constants(cfg.constants, inline_values={field: float(value)})})
            else:
                error_console.print(f"[status.fail]Unknown key: {key}[/status.fail]")
                raise SystemExit(2)
            updated = AppConfig.model_validate({**data, "constants": cfg.constants})
        except (ValidationError, ConfigError, ValueError) as e:
            error_console.print(f"[status.fail]Invalid value for {key}: {e}[/status.fail]")
            raise SystemExit(2) from e

        save_config(updated)
        console.print(f"[status.pass]Set {key} = {value}[/status.pass]")

    return config


# Register subcommands
cli.add_command(bounds)
cli.add_command(norms)
cli.add_command(estimate)
cli.add_command(verify)
cli.add_command(sweep)
cli.add_command(_make_config_group(), "config")
