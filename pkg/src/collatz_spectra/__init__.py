"""Exact trajectory-density computations for the 3x+1 and 5x+1 problems."""

__version__ = "0.1.0"
