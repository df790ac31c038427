"""Mastermind solver suite: weighted-entropy heuristics, evaluation, optimizer."""

from .kernels import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
