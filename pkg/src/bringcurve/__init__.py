"""Finite-field computations on generalized Bring curves."""

from .ff import FieldCtx, fq_make
from .variety import DiagonalSystem, ProjPoint

__version__ = "0.1.0"

__all__ = ["DiagonalSystem", "FieldCtx", "ProjPoint", "fq_make"]
