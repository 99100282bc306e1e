"""Exact traces of Hecke operators on spaces of holomorphic cusp forms."""

__version__ = "0.1.0"
