"""Exact algebra for a two-parameter family of quadratic rational maps with a periodic critical 4-cycle."""

__version__ = "0.1.0"
