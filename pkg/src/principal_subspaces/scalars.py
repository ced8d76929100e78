"""Exact rational scalar type: gmpy2's mpq, a drop-in for fractions.Fraction."""

from gmpy2 import mpq as Q

__all__ = ["Q"]
