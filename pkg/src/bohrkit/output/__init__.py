"""Output formatting for bohrkit."""
