"""Exact rational computations with permutation modules of finite groups."""

__version__ = "0.1.0"
