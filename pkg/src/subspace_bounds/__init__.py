"""Bounds engine for constant and mixed dimension subspace codes."""

__version__ = "0.1.0"
