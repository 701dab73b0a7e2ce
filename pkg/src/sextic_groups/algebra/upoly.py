"""Dense univariate polynomials over Q or Q(sqrt(d)).

A polynomial is a tuple of coefficients listed from degree 0 upwards with no
trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .quadratic import QuadraticNumber, conjugate as conj_number, radicand_of

UPoly = tuple


def _field(c):
    if isinstance(c, QuadraticNumber):
        return c.a if c.b == 0 else c
    return Fraction(c)


def trim(p: Sequence) -> UPoly:
    p = [_field(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: UPoly) -> int:
    return len(p) - 1


def add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, scale(q, -1))


def scale(p: UPoly, c) -> UPoly:
    return trim([c * x for x in p])


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def power(p: UPoly, n: int) -> UPoly:
    out: UPoly = (Fraction(1),)
    for _ in range(n):
        out = mul(out, p)
    return out


def divmod_poly(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(p)
    dq = len(q) - 1
    lead_inv = 1 / q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = r[k + dq] * lead_inv
        if c != 0:
            quot[k] = c
            for j in range(dq + 1):
                r[k + j] = r[k + j] - c * q[j]
    return trim(quot), trim(r[:dq] if dq > 0 else [])


def monic(p: UPoly) -> UPoly:
    if not p:
        return p
    return scale(p, 1 / p[-1])


def gcd(p: UPoly, q: UPoly) -> UPoly:
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p)


def xgcd(p: UPoly, q: UPoly):
    """Return ``(g, s, t)`` with ``s*p + t*q = g`` monic."""
    r0, r1 = p, q
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        quo, rem = divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return (), (), ()
    inv = 1 / r0[-1]
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(p: UPoly) -> UPoly:
    return trim([k * p[k] for k in range(1, len(p))])


def evaluate(p: UPoly, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose(p: UPoly, q: UPoly) -> UPoly:
    acc: UPoly = ()
    for c in reversed(p):
        acc = add(mul(acc, q), (c,))
    return acc


def conjugate(p: UPoly) -> UPoly:
    return trim([conj_number(c) for c in p])


def squarefree_decomposition(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: ``p = lc * prod f_i^i`` with squarefree, pairwise coprime f_i."""
    if len(p) <= 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = divmod_poly(p, a)[0]
    c = divmod_poly(dp, a)[0]
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        a = gcd(b, d)
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = sub(c, derivative(b))
        if len(a) > 1:
            out.append((monic(a), i))
        i += 1
    return out


def squarefree_part(p: UPoly) -> UPoly:
    out: UPoly = (Fraction(1),)
    for f, _ in squarefree_decomposition(p):
        out = mul(out, f)
    return out


# real roots of rational polynomials

def sturm_sequence(p: UPoly) -> list[UPoly]:
    seq = [p, derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        seq.append(scale(r, -1))
    return seq[:-1]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_real_roots(p: UPoly, lo: Fraction, hi: Fraction, seq=None) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    seq = seq or sturm_sequence(p)
    return _sign_changes(evaluate(q, lo) for q in seq) - _sign_changes(evaluate(q, hi) for q in seq)


def root_bound(p: UPoly) -> Fraction:
    """Cauchy bound: all complex roots have modulus below it."""
    lead = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p: UPoly, width: Fraction = Fraction(1, 10**6)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]`` each holding exactly one real root of the
    squarefree rational polynomial ``p``, refined below ``width`` and sorted."""
    if radicand_of(*p) is not None:
        raise ValueError("Sturm isolation requires rational coefficients")
    p = squarefree_part(p)
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    b = root_bound(p)
    stack = [(-b, b)]
    found = []
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(p, lo, hi, seq)
        if n == 0:
            continue
        if n == 1 and hi - lo < width:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.extend([(lo, mid), (mid, hi)])
    return sorted(found)


# roots in a quadratic field

@dataclass(frozen=True)
class AlgebraicRoot:
    """A root of ``minpoly`` not expressible in the working field, with a
    numerical value and, when the polynomial is rational and the root real,
    a rational isolating interval."""

    minpoly: UPoly
    approx: complex
    interval: tuple | None = None

    @property
    def is_real(self) -> bool:
        return self.interval is not None or abs(self.approx.imag) < 1e-12 * max(1.0, abs(self.approx))

    def __float__(self):
        if not self.is_real:
            raise TypeError("non-real algebraic root")
        return float(self.approx.real)

    def __complex__(self):
        return complex(self.approx)


def numeric_roots(p: UPoly, dps: int = 50) -> list[complex]:
    """Roots of a squarefree polynomial via mpmath, returned as mpc values."""
    coeffs = [complex(c) for c in reversed(p)]
    if len(coeffs) <= 1:
        return []
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([mpmath.mpc(c) for c in coeffs], maxsteps=400, extraprec=4 * dps)
    return list(roots)


def _rationalize(x, den: int = 10**12) -> Fraction | None:
    f = Fraction(str(mpmath.nstr(x, 40, strip_zeros=False)) if not isinstance(x, float) else x)
    return f.limit_denominator(den)


def _squarefree_kernel(n: int) -> tuple[int, int]:
    """``n = s^2 * d`` with ``d`` squarefree; returns ``(s, d)``."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, d, k = 1, 1, 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
            s *= k
        if n % k == 0:
            n //= k
            d *= k
        k += 1
    return s, d * n * sign


def _sqrt_rational(q: Fraction):
    """``sqrt(q)`` as a rational or QuadraticNumber."""
    num = q.numerator * q.denominator
    s, d = _squarefree_kernel(num)
    coeff = Fraction(s, q.denominator)
    if d == 1:
        return coeff
    return QuadraticNumber(0, coeff, d)


def _quadratic_roots(s: Fraction, p: Fraction):
    """Roots of X^2 - sX + p."""
    disc = s * s - 4 * p
    root = _sqrt_rational(disc)
    return [s / 2 + root / 2, s / 2 - root / 2]


def field_roots(p: UPoly, allow_radicands: Sequence[int] | None = None):
    """Roots of ``p`` (with multiplicity) over its coefficient field.

    Returns ``(roots, rest)``: ``roots`` is a list of ``(value, multiplicity)``
    with values exact rationals or QuadraticNumbers, ``rest`` a list of
    ``(AlgebraicRoot, multiplicity)`` for the remaining roots. For rational
    ``p``, roots in Q(sqrt(d)) are returned exactly when ``d`` is in
    ``allow_radicands`` (every radicand when ``None``).
    """
    p = trim(p)
    d_field = radicand_of(*p)
    exact: list = []
    rest: list = []
    for factor, mult in squarefree_decomposition(p):
        found, leftover = _factor_roots(factor, d_field, allow_radicands)
        exact.extend((v, mult) for v in found)
        if len(leftover) > 1:
            rest.extend((r, mult) for r in _algebraic_roots(leftover))
    return exact, rest


def _factor_roots(f: UPoly, d_field, allow):
    """Exact roots of a monic squarefree polynomial over its field."""
    norm = f if d_field is None else mul(f, conjugate(f))
    norm = squarefree_part(norm)
    approx = numeric_roots(norm)
    candidates = []
    used = [False] * len(approx)
    for i, z in enumerate(approx):
        if abs(mpmath.im(z)) < mpmath.mpf(10) ** -30:
            q = _rationalize(mpmath.re(z))
            if q is not None and evaluate(norm, q) == 0:
                candidates.append(q)
                used[i] = True
    for i, z in enumerate(approx):
        if used[i]:
            continue
        for j in range(i + 1, len(approx)):
            if used[j]:
                continue
            w = approx[j]
            s, pr = z + w, z * w
            if abs(mpmath.im(s)) > mpmath.mpf(10) ** -30 or abs(mpmath.im(pr)) > mpmath.mpf(10) ** -30:
                continue
            sq, pq = _rationalize(mpmath.re(s)), _rationalize(mpmath.re(pr))
            quad = (pq, -sq, Fraction(1))
            if divmod_poly(norm, quad)[1]:
                continue
            roots = _quadratic_roots(sq, pq)
            rad = radicand_of(*roots)
            if d_field is None and allow is not None and rad is not None and rad not in allow:
                continue
            if d_field is not None and rad is not None and rad != d_field:
                continue
            candidates.extend(roots)
            used[i] = used[j] = True
            break
    found = []
    rest = f
    for v in candidates:
        if evaluate(rest, v) == 0:
            found.append(v)
            rest = divmod_poly(rest, (-v, Fraction(1)))[0]
    return found, rest


def _algebraic_roots(f: UPoly) -> list[AlgebraicRoot]:
    approx = numeric_roots(f)
    intervals = []
    if radicand_of(*f) is None:
        intervals = isolate_real_roots(f, Fraction(1, 10**9))
    out = []
    for z in approx:
        zc = complex(z)
        interval = None
        if abs(zc.imag) < 1e-20 + 1e-12 * abs(zc):
            zc = complex(zc.real, 0.0)
            for lo, hi in intervals:
                if lo - Fraction(1, 10**6) <= Fraction(zc.real) <= hi + Fraction(1, 10**6):
                    interval = (lo, hi)
                    break
        out.append(AlgebraicRoot(f, zc, interval))
    out.sort(key=lambda r: (not r.is_real, r.approx.real, r.approx.imag))
    return out
