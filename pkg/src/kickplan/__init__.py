"""Heuristic-search attack planning for humanoid robot soccer."""

__version__ = "0.1.0"
