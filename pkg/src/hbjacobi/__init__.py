"""Jacobi diagrams in handlebodies: computations with exact rationals."""

__version__ = "0.1.0"
