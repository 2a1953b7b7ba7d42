"""Tactical sentence generation for Turkish."""

from .generator import Generator, get_generator

__all__ = ["Generator", "get_generator"]
