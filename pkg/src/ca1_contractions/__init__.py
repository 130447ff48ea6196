"""Computations for weighted blow-ups of cA1 threefold points."""

__version__ = "0.1.0"
