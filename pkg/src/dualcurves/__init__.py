"""Exact computational algebra for dual graphs of projective curve arrangements."""

__version__ = "0.1.0"
