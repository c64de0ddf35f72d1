"""Infinite chess in two and three dimensions with ordinal game values."""

__version__ = "0.1.0"
