"""Exact Mordell-Weil lattices for y^2 = x^3 + v^a(v^b+1) and their lift to Y^2 = X^3 + t^360 + 1."""

__version__ = "0.1.0"
