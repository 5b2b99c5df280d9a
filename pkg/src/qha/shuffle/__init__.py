"""Shuffle algebras of symmetric quivers and their localized coproduct."""

from .element import LaurentSeries, LocalizedElement, ShuffleElement, ShuffleError, block_vars
from .ops import BialgebraCheck, ShuffleAlgebra, alternant_quotient, expand, residue, shuffles
from .poly import DivisionNotExact, MultiPoly, PolyError, tvar, xvar

__all__ = [
    "BialgebraCheck", "DivisionNotExact", "LaurentSeries", "LocalizedElement", "MultiPoly",
    "PolyError", "ShuffleAlgebra", "ShuffleElement", "ShuffleError", "alternant_quotient",
    "block_vars", "expand", "residue", "shuffles", "tvar", "xvar",
]
