"""Proper rainbow-cycle-forbidding edge colorings: constructions, search and counting certificates."""

__version__ = "0.1.0"
