"""Logarithmic bundles of line and conic arrangements in the projective plane."""

__version__ = "0.1.0"
