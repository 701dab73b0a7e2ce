"""Sparse multivariate polynomials over Q or Q(sqrt(d)).

Variables are kept sorted in reverse alphabetical order so that exponent
tuples compare lexicographically with ``y > x > t > r``; this fixes both the
division order and the printed term order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .quadratic import QuadraticNumber, format_number


def _is_coeff(x) -> bool:
    return isinstance(x, (int, Fraction, QuadraticNumber))


def _norm_coeff(c):
    if isinstance(c, QuadraticNumber):
        return c if c.b != 0 else c.a
    return Fraction(c)


class Polynomial:
    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[tuple, object] | None = None, variables: Iterable[str] = ()):
        variables = tuple(variables)
        if list(variables) != sorted(set(variables), reverse=True):
            order = sorted(set(variables), reverse=True)
            idx = [variables.index(v) for v in order]
            terms = {tuple(e[i] for i in idx): c for e, c in (terms or {}).items()}
            variables = tuple(order)
        self.vars = variables
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != len(variables):
                raise ValueError("exponent vector does not match variables")
            if c:
                clean[tuple(e)] = _norm_coeff(c)
        self.terms = clean

    # construction
    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({(1,): Fraction(1)}, (name,))

    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({(): c}, ())

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return _Parser(text).parse()

    @classmethod
    def from_univariate(cls, coeffs, var: str) -> "Polynomial":
        """Coefficients listed from degree 0 upwards."""
        return cls({(k,): c for k, c in enumerate(coeffs)}, (var,))

    # variable bookkeeping
    def _extend(self, variables: tuple) -> dict:
        if variables == self.vars:
            return self.terms
        idx = [self.vars.index(v) if v in self.vars else None for v in variables]
        out = {}
        for e, c in self.terms.items():
            out[tuple(0 if i is None else e[i] for i in idx)] = c
        return out

    @staticmethod
    def _common(p: "Polynomial", q: "Polynomial") -> tuple:
        if p.vars == q.vars:
            return p.vars
        return tuple(sorted(set(p.vars) | set(q.vars), reverse=True))

    @staticmethod
    def lift(x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if _is_coeff(x):
            return Polynomial.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Polynomial")

    def compact(self) -> "Polynomial":
        """Drop variables that do not occur."""
        used = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        if len(used) == len(self.vars):
            return self
        return Polynomial(
            {tuple(e[i] for i in used): c for e, c in self.terms.items()},
            tuple(self.vars[i] for i in used),
        )

    # arithmetic
    def __add__(self, other):
        try:
            other = Polynomial.lift(other)
        except TypeError:
            return NotImplemented
        vs = Polynomial._common(self, other)
        out = dict(self._extend(vs))
        for e, c in other._extend(vs).items():
            out[e] = out.get(e, 0) + c
        return Polynomial(out, vs)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        try:
            other = Polynomial.lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.lift(other) - self

    def __mul__(self, other):
        try:
            other = Polynomial.lift(other)
        except TypeError:
            return NotImplemented
        vs = Polynomial._common(self, other)
        a, b = self._extend(vs), other._extend(vs)
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(out, vs)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if _is_coeff(other):
            inv = 1 / (other if isinstance(other, QuadraticNumber) else Fraction(other))
            return self * inv
        other = Polynomial.lift(other)
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def __eq__(self, other):
        try:
            other = Polynomial.lift(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        p = self.compact()
        return hash((p.vars, frozenset(p.terms.items())))

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def coefficients(self, var: str) -> dict[int, "Polynomial"]:
        """Map ``k -> coefficient of var**k`` (a polynomial in the other variables)."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: Polynomial(t, rest) for k, t in buckets.items()}

    def leading_coefficient(self, var: str) -> "Polynomial":
        coeffs = self.coefficients(var)
        return coeffs[max(coeffs)] if coeffs else Polynomial.const(0)

    def leading_term(self):
        e = max(self.terms)
        return e, self.terms[e]

    def diff(self, var: str) -> "Polynomial":
        if var not in self.vars:
            return Polynomial.const(0)
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = c * e[i]
        return Polynomial(out, self.vars)

    def subs(self, values: Mapping[str, object]) -> "Polynomial":
        """Substitute numbers or polynomials for variables."""
        keep = [v for v in self.vars if v not in values]
        keep_idx = [self.vars.index(v) for v in keep]
        repl = [(self.vars.index(v), Polynomial.lift(values[v])) for v in self.vars if v in values]
        power_cache: dict = {}

        def power(j, p, k):
            key = (j, k)
            if key not in power_cache:
                power_cache[key] = p ** k
            return power_cache[key]

        result = Polynomial.const(0)
        for e, c in self.terms.items():
            term = Polynomial({tuple(e[i] for i in keep_idx): c}, tuple(keep))
            for j, p in repl:
                if e[j]:
                    term = term * power(j, p, e[j])
            result = result + term
        return result

    def __call__(self, **values):
        return self.subs(values)

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Floating-point evaluation (all variables must be given)."""
        total = 0j
        for e, c in self.terms.items():
            t = complex(c)
            for v, k in zip(self.vars, e):
                if k:
                    t *= complex(values[v]) ** k
            total += t
        return total

    def univariate_coefficients(self, var: str) -> list:
        """Dense coefficients (degree 0 upwards) of a polynomial in ``var`` only."""
        p = self.compact()
        if p.vars not in ((), (var,)):
            raise ValueError(f"polynomial involves variables other than {var}: {p.vars}")
        if not p.terms:
            return []
        n = p.degree()
        out = [Fraction(0)] * (n + 1)
        for e, c in p.terms.items():
            out[e[0] if e else 0] = c
        return out

    def divmod(self, other: "Polynomial"):
        """Multivariate division by leading terms (lex order); exact when other divides self."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        vs = Polynomial._common(self, other)
        rem = dict(self._extend(vs))
        div = other._extend(vs)
        le, lc = max(div.items())
        quot: dict = {}
        remainder: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if all(x >= y for x, y in zip(e, le)):
                shift = tuple(x - y for x, y in zip(e, le))
                f = c / lc
                quot[shift] = quot.get(shift, 0) + f
                for e2, c2 in div.items():
                    k = tuple(x + y for x, y in zip(e2, shift))
                    v = rem.get(k, 0) - f * c2
                    if v:
                        rem[k] = v
                    else:
                        rem.pop(k, None)
            else:
                remainder[e] = c
                del rem[e]
        return Polynomial(quot, vs), Polynomial(remainder, vs)

    def divides(self, other: "Polynomial") -> bool:
        return other.divmod(self)[1].is_zero()

    # text
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in sorted(zip(self.vars, e))
                if k
            )
            parts.append(_format_term(c, mono))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _format_term(c, mono: str) -> str:
    if isinstance(c, QuadraticNumber) and c.b != 0:
        if c.a == 0:
            cs = format_number(c)
            if not mono:
                return cs
            return f"{cs}*{mono}"
        cs = f"({format_number(c)})"
        return f"{cs}*{mono}" if mono else cs
    if not mono:
        return format_number(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{format_number(c)}*{mono}"


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(sqrt)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad polynomial syntax at {text[pos:]!r}")
            num, sq, name, op = m.groups()
            if num:
                self.tokens.append(("num", Fraction(num)))
            elif sq:
                self.tokens.append(("sqrt", None))
            elif name:
                self.tokens.append(("name", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.i != len(self.tokens):
            raise ValueError("trailing tokens in polynomial")
        return p

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        p = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self):
        p = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            q = self.power()
            if op == "*":
                p = p * q
            else:
                p = p / q.constant_value()
        return p

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ValueError("exponent must be a non-negative integer")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Polynomial.const(val)
        if kind == "name":
            return Polynomial.var(val)
        if kind == "sqrt":
            if self.take() != ("op", "("):
                raise ValueError("expected ( after sqrt")
            k2, d = self.take()
            neg = False
            if (k2, d) == ("op", "-"):
                neg = True
                k2, d = self.take()
            if k2 != "num" or self.take() != ("op", ")"):
                raise ValueError("sqrt takes an integer literal")
            return Polynomial.const(QuadraticNumber.sqrt(-int(d) if neg else int(d)))
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return p
        if (kind, val) == ("op", "-"):
            return -self.power()
        raise ValueError(f"unexpected token {val!r}")


def sylvester_matrix(f: Polynomial, g: Polynomial, var: str) -> list[list[Polynomial]]:
    m, n = f.degree(var), g.degree(var)
    fc, gc = f.coefficients(var), g.coefficients(var)
    zero = Polynomial.const(0)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = fc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = gc.get(k, zero)
        rows.append(row)
    return rows


def determinant(matrix: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free Bareiss elimination over the polynomial ring."""
    n = len(matrix)
    if n == 0:
        return Polynomial.const(1)
    a = [[Polynomial.lift(x) for x in row] for row in matrix]
    sign = 1
    prev = Polynomial.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Polynomial.const(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev.is_constant() and prev.constant_value() == 1 else num / prev
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Sylvester resultant of f and g with respect to ``var``."""
    if var not in f.vars and var not in g.vars:
        raise ValueError(f"variable {var!r} occurs in neither polynomial")
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if f.degree(var) == 0 and g.degree(var) == 0:
        return Polynomial.const(1)
    return determinant(sylvester_matrix(f, g, var)).compact()


def discriminant(f: Polynomial, var: str = "y") -> Polynomial:
    """``(-1)^(d(d-1)/2) * Res(f, df/dvar) / lc(f)``."""
    d = f.degree(var)
    if d < 1:
        raise ValueError(f"polynomial is constant in {var}")
    if d == 1:
        return Polynomial.const(1)
    res = resultant(f, f.diff(var), var)
    lc = f.leading_coefficient(var)
    out = res / lc if not lc.is_constant() else res * (1 / _as_field(lc.constant_value()))
    return out * (-1 if (d * (d - 1) // 2) % 2 else 1)


def discriminant_y(f: Polynomial) -> Polynomial:
    return discriminant(f, "y")


def _as_field(c):
    return c if isinstance(c, QuadraticNumber) else Fraction(c)
