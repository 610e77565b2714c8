"""Exact tools for congruent-triangle tilings and square tile counts."""

__version__ = "0.1.0"
