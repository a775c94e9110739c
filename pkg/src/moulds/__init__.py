"""Exact computations with rational moulds and their operadic structure."""

__version__ = "0.1.0"
