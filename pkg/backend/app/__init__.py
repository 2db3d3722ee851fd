"""FastAPI backend exposing the benford toolkit."""

__version__ = "0.1.0"
