"""Finite Boolean restriction monoids, prime-filter categories and groupoids of fractions."""

__version__ = "0.1.0"
