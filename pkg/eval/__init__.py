"""Reproduction and runtime benchmarks for the digit-law toolkit."""

__version__ = "0.1.0"
