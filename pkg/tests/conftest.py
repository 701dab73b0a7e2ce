import sympy

from sextic_groups.algebra.polynomial import Polynomial


def to_sympy(p: Polynomial):
    """Independent re-reading of a polynomial through its printed form."""
    return sympy.sympify(str(p).replace("^", "**"))


def from_sympy(expr) -> Polynomial:
    return Polynomial.parse(str(sympy.expand(expr)).replace("**", "^"))
