"""Exact rational type used throughout: gmpy2.mpq when available."""

try:
    from gmpy2 import mpq as Fraction
except ImportError:  # pragma: no cover
    from fractions import Fraction

RATIONAL_TYPES = (int, Fraction)
