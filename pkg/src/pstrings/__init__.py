"""Exact computations with partial monoids, labeled configuration spaces and string spaces."""

__version__ = "0.1.0"
