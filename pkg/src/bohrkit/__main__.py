"""Allow running as `python -m bohrkit`."""

from bohrkit.cli.app import cli

cli()
