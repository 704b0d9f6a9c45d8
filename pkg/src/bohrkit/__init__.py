"""bohrkit — Bohr radius bounds, space invariants and empirical estimates."""

__version__ = "0.1.0"
