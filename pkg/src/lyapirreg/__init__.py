"""Numerical laboratory for Lyapunov-irregular dynamics."""

__version__ = "0.1.0"
