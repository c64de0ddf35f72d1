"""Core utilities: settings and the exception hierarchy."""
