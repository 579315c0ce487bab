"""Exact arithmetic for positive definite ternary quadratic forms of level 4N."""

from .forms import TernaryForm

__all__ = ["TernaryForm"]
