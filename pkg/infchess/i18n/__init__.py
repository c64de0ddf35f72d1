"""Helpers for localized messages."""

from .messages import t, translate

__all__ = ["t", "translate"]
