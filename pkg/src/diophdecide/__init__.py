"""Diophantine decision procedures, prime-density statistics and the bound formulas behind them."""

from .poly import PolySystem, SparsePoly, UniPoly, RatUniPoly, parse, sizes

__all__ = ["PolySystem", "SparsePoly", "UniPoly", "RatUniPoly", "parse", "sizes"]
__version__ = "0.1.0"
