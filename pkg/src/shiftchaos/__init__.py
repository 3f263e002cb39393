"""Exact computations for weighted backward shifts on c0 and c."""

__version__ = "0.1.0"
