"""CLI commands for bohrkit."""
