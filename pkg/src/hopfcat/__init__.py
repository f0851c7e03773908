"""Exact computations with Hopf categories over a field."""

__version__ = "0.1.0"
