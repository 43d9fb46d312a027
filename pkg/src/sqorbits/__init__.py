"""Consecutive rational squares in orbits of quadratic polynomial maps."""

__version__ = "0.1.0"
