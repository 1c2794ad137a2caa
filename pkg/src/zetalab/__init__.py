"""Numerical laboratory for zeta zeros on the critical line."""

__version__ = "0.1.0"
