"""Elements of Q(sqrt(d)) with exact rational parts."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational


def _squarefree(n: int) -> bool:
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class QuadraticNumber:
    """``a + b*sqrt(d)`` with ``a, b`` rational and ``d`` a squarefree integer.

    Values with the same radicand form a field. A value whose radical part is
    zero compares equal to (and hashes like) the corresponding rational, so
    QuadraticNumber and Fraction can be mixed freely.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 2):
        if d in (0, 1) or not _squarefree(d):
            raise ValueError(f"radicand must be squarefree and not 0 or 1, got {d}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticNumber":
        return cls(0, 1, d)

    # coercion
    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                if other.b == 0:
                    return QuadraticNumber(other.a, 0, self.d)
                if self.b == 0:
                    # promote self lazily by returning a value in other's field
                    return NotImplemented
                raise ValueError(f"mixed radicands {self.d} and {other.d}")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return QuadraticNumber(other, 0, self.d)
        return NotImplemented

    def _retag(self, d: int) -> "QuadraticNumber":
        return QuadraticNumber(self.a, 0, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return self._retag(other.d) + other
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return self._retag(other.d) - other
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return self._retag(other.d) * other
        return QuadraticNumber(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.d)
        return QuadraticNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return self._retag(other.d) / other
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticNumber(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Sign of the real number this represents (positive radicand only)."""
        if self.d < 0:
            if self.b != 0:
                raise ValueError("non-real value has no sign")
            return (self.a > 0) - (self.a < 0)
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        if self.d < 0:
            if self.b != 0:
                raise TypeError("non-real value")
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __complex__(self):
        if self.d < 0:
            return complex(float(self.a), float(self.b) * math.sqrt(-self.d))
        return complex(float(self))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"QuadraticNumber({self.a!s}, {self.b!s}, {self.d})"

    def __str__(self):
        return format_number(self)


def format_number(x) -> str:
    """Canonical text for a rational or quadratic number."""
    if isinstance(x, QuadraticNumber):
        if x.b == 0:
            return format_number(x.a)
        root = f"sqrt({x.d})"
        if x.b == 1:
            rad = root
        elif x.b == -1:
            rad = "-" + root
        else:
            rad = f"{format_number(x.b)}*{root}"
        if x.a == 0:
            return rad
        if rad.startswith("-"):
            return f"{format_number(x.a)} - {rad[1:]}"
        return f"{format_number(x.a)} + {rad}"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_number(text: str):
    """Inverse of :func:`format_number` for the shapes it produces."""
    text = text.strip()
    if "sqrt" not in text:
        return Fraction(text)
    m = re.fullmatch(
        r"(?:(?P<a>-?\d+(?:/\d+)?)\s*(?P<op>[+-])\s*)?(?P<neg>-)?(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<d>-?\d+)\)",
        text,
    )
    if not m:
        raise ValueError(f"cannot parse number {text!r}")
    a = Fraction(m.group("a") or 0)
    b = Fraction(m.group("b") or 1)
    if m.group("neg"):
        b = -b
    if m.group("op") == "-":
        b = -b
    return QuadraticNumber(a, b, int(m.group("d")))


def radicand_of(*values) -> int | None:
    """Common radicand of the irrational values among ``values`` (None if all rational)."""
    d = None
    for v in values:
        if isinstance(v, QuadraticNumber) and v.b != 0:
            if d is None:
                d = v.d
            elif d != v.d:
                raise ValueError(f"mixed radicands {d} and {v.d}")
    return d


def conjugate(x):
    if isinstance(x, QuadraticNumber):
        return x.conjugate()
    return x


def is_zero(x) -> bool:
    return not x
