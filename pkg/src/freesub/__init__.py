"""Subgroups of free groups and of ``F_k x Z/n``: folding, intersections,
rank bounds, and the ordered-tree machinery behind them."""

from ._backend import available_backends, current_backend, set_backend
from .words import Word, inv, mul, reduce

__version__ = "0.1.0"

__all__ = [
    "Word",
    "available_backends",
    "current_backend",
    "inv",
    "mul",
    "reduce",
    "set_backend",
]
