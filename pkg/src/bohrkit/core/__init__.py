"""Shared numerics: bisection, multi-start ascent, family fan-out and seeding."""
