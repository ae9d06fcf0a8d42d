"""Pants graphs and curve complexes of low-complexity nonorientable surfaces."""

__version__ = "0.1.0"
