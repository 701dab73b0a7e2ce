"""Exact arithmetic substrate."""

from .matrix import AbelianInvariants, IntegerMatrix, SmithResult, smith_normal_form
from .polynomial import Polynomial, discriminant, discriminant_y, resultant
from .quadratic import QuadraticNumber, format_number, parse_number
from .words import free_reduce

__all__ = [
    "AbelianInvariants",
    "IntegerMatrix",
    "Polynomial",
    "QuadraticNumber",
    "SmithResult",
    "discriminant",
    "discriminant_y",
    "format_number",
    "free_reduce",
    "parse_number",
    "resultant",
    "smith_normal_form",
]
