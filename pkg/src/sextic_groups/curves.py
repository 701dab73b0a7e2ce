"""Exact geometry of the trigonal model: the cuspidal cubic ``f_r``, its
sections ``y = a x^2 + b x + c``, intersection divisors and the singularities
of the resulting sextic."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .algebra import upoly
from .algebra.polynomial import Polynomial, discriminant_y, resultant
from .algebra.quadratic import QuadraticNumber, format_number, parse_number
from .singularities import Singularity, SingularitySet

Number = Union[Fraction, QuadraticNumber]

RADICANDS = (2, 3)


class ExcludedParameter(ValueError):
    """A family parameter at which the formula degenerates."""


class DegenerateSection(ValueError):
    """The section meets the curve at its vertical tangency point."""


def _num(x) -> Number:
    if isinstance(x, QuadraticNumber):
        return x if x.b else x.a
    if isinstance(x, str):
        return parse_number(x)
    return Fraction(x)


class TrigonalCurve:
    """``y^3 + r^2 y^2 + 2 r x y + x^2 = 0``; ``r=None`` keeps ``r`` symbolic."""

    def __init__(self, r=Fraction(3)):
        self.r = None if r is None else _num(r)

    @property
    def symbolic(self) -> bool:
        return self.r is None

    def _r(self):
        return Polynomial.var("r") if self.r is None else self.r

    def polynomial(self) -> Polynomial:
        x, y, r = Polynomial.var("x"), Polynomial.var("y"), self._r()
        return y**3 + y**2 * r**2 + x * y * r * 2 + x**2

    def parameterization(self, y_t: Polynomial | None = None) -> tuple:
        t = Polynomial.var("t")
        x_t = t**2 * self._r() + t**3
        return x_t, (-(t**2) if y_t is None else y_t)

    def x_t(self, t):
        return self.r * t * t + t * t * t

    def y_t(self, t):
        return -t * t

    @property
    def vertical_tangent_t(self) -> Number:
        return -2 * self.r / 3

    @property
    def vertical_tangent_x(self) -> Number:
        return 4 * self.r**3 / 27

    def __repr__(self):
        return f"TrigonalCurve(r={'r' if self.r is None else format_number(self.r)})"


def verify_parameterization(curve: TrigonalCurve, y_t: Polynomial | None = None) -> bool:
    """Whether ``f_r(x_t, y_t)`` vanishes identically in ``t``."""
    x_t, yy = curve.parameterization(y_t)
    return curve.polynomial().subs({"x": x_t, "y": yy}).is_zero()


def curve_discriminant(curve: TrigonalCurve) -> Polynomial:
    return discriminant_y(curve.polynomial())


@dataclass(frozen=True)
class Section:
    a: Number
    b: Number
    c: Number

    def __post_init__(self):
        for k in ("a", "b", "c"):
            object.__setattr__(self, k, _num(getattr(self, k)))
        if not self.a:
            raise ValueError("a section must have a != 0")

    def __call__(self, x):
        return self.a * x * x + self.b * x + self.c

    def polynomial(self) -> Polynomial:
        x, y = Polynomial.var("x"), Polynomial.var("y")
        return y - (x**2 * self.a + x * self.b + self.c)

    def to_dict(self) -> dict:
        return {k: format_number(getattr(self, k)) for k in ("a", "b", "c")}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Section":
        return cls(parse_number(d["a"]), parse_number(d["b"]), parse_number(d["c"]))


def _require(t, curve: TrigonalCurve, excluded: dict) -> None:
    for label, value in excluded.items():
        if t == value:
            raise ExcludedParameter(f"t = {label} is excluded for this family")


def tangent_section(t, a, curve: TrigonalCurve) -> Section:
    """Section with leading coefficient ``a`` tangent to the curve at ``t``."""
    t, a, r = _num(t), _num(a), curve.r
    _require(t, curve, {"0": 0, "-2r/3": -2 * r / 3})
    b = -2 * t**2 * (t + r) * a - 2 / (3 * t + 2 * r)
    c = t**4 * (t + r) ** 2 * a - t**3 / (3 * t + 2 * r)
    return Section(a, b, c)


def double_tangent_section(t, curve: TrigonalCurve) -> Section:
    """Section tangent at ``t`` and at ``-r/3 - t``."""
    t, r = _num(t), curve.r
    _require(t, curve, {"0": 0, "-r/6": -r / 6, "-2r/3": -2 * r / 3, "-r/3": -r / 3, "r/3": r / 3})
    den = (3 * t - r) ** 2 * (3 * t + 2 * r) ** 2
    a = Fraction(-27) / den
    b = 2 * r * (27 * t**2 + 9 * r * t - 2 * r**2) / den
    c = -2 * t**3 * (3 * t + r) ** 3 / den
    return Section(a, b, c)


def inflection_section(t, curve: TrigonalCurve) -> Section:
    """Section with intersection multiplicity at least 3 at ``t``."""
    t, r = _num(t), curve.r
    _require(t, curve, {"0": 0, "-2r/3": -2 * r / 3})
    d = (3 * t + 2 * r) ** 3
    a = 3 / (t * d)
    b = -2 * (12 * t**2 + 15 * r * t + 4 * r**2) / d
    c = -(t**3) * (6 * t**2 + 6 * r * t + r**2) / d
    return Section(a, b, c)


def cusp_tangent_section(t, curve: TrigonalCurve) -> Section:
    """Section through the cusp (``c = 0``) tangent to the curve at ``t``."""
    t, r = _num(t), curve.r
    _require(t, curve, {"0": 0, "-r": -r, "-2r/3": -2 * r / 3})
    a = 1 / (t * (t + r) ** 2 * (3 * t + 2 * r))
    b = -2 * (2 * t + r) / ((t + r) * (3 * t + 2 * r))
    return Section(a, b, Fraction(0))


# intersection divisor

def intersection_polynomial(section: Section, curve: TrigonalCurve) -> tuple:
    """Coefficients (degree 0 upwards) of ``s(x_t) - y_t`` in ``t``."""
    r = curve.r
    x_t = (0, 0, r, 1)
    poly = upoly.add(upoly.scale(upoly.mul(x_t, x_t), section.a), upoly.scale(x_t, section.b))
    return upoly.add(poly, (section.c, 0, 1))


@dataclass(frozen=True)
class IntersectionPoint:
    t: object  # exact Number or AlgebraicRoot
    multiplicity: int
    at_cusp: bool = False
    vertical_tangency: bool = False

    @property
    def exact(self) -> bool:
        return not isinstance(self.t, upoly.AlgebraicRoot)

    @property
    def is_real(self) -> bool:
        return self.exact or self.t.is_real

    def approx(self) -> complex:
        return complex(self.t)

    def to_dict(self) -> dict:
        if self.exact:
            t = format_number(self.t)
        else:
            t = {
                "minpoly": [format_number(c) for c in self.t.minpoly],
                "approx": [self.t.approx.real, self.t.approx.imag],
            }
            if self.t.interval:
                t["interval"] = [str(x) for x in self.t.interval]
        return {"t": t, "multiplicity": self.multiplicity, "at_cusp": self.at_cusp,
                "vertical_tangency": self.vertical_tangency}


@dataclass(frozen=True)
class IntersectionDivisor:
    points: tuple

    @property
    def total(self) -> int:
        return sum(p.multiplicity for p in self.points)

    def multiplicity_at(self, t) -> int:
        t = _num(t)
        return sum(p.multiplicity for p in self.points if p.exact and p.t == t)

    def pattern(self) -> tuple:
        return tuple(sorted((p.multiplicity for p in self.points), reverse=True))

    def to_dict(self) -> dict:
        return {"points": [p.to_dict() for p in self.points], "total": self.total}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _sort_key(point: IntersectionPoint):
    z = point.approx()
    return (not point.is_real, z.real, z.imag)


def intersection_divisor(section: Section, curve: TrigonalCurve) -> IntersectionDivisor:
    poly = intersection_polynomial(section, curve)
    exact, rest = upoly.field_roots(poly, RADICANDS)
    vt = curve.vertical_tangent_t
    points = [IntersectionPoint(t, m, t == 0, t == vt) for t, m in exact]
    points += [IntersectionPoint(root, m) for root, m in rest]
    points.sort(key=_sort_key)
    div = IntersectionDivisor(tuple(points))
    if div.total != 6:
        raise ArithmeticError(f"intersection multiplicities sum to {div.total}, expected 6")
    return div


# classification

E6 = Singularity("E", 6)
A2 = Singularity("A", 2)
A5 = Singularity("A", 5)


def inner_singularities(section: Section, curve: TrigonalCurve) -> tuple:
    if section.c:
        return (E6, E6, A2, A2)
    if section.b != -1 / curve.r:
        return (E6, E6, A5)
    return (E6, E6, E6)


def classify_sextic(section: Section, curve: TrigonalCurve) -> SingularitySet:
    div = intersection_divisor(section, curve)
    if any(p.vertical_tangency for p in div.points):
        raise DegenerateSection("the section passes through the vertical tangency point")
    outer = tuple(Singularity("A", p.multiplicity - 1) for p in div.points if not p.at_cusp and p.multiplicity > 1)
    return SingularitySet(inner_singularities(section, curve), outer)


# singular fibers

@dataclass(frozen=True)
class SingularFiber:
    x: object  # exact Number, or None when only approximated
    approx: float
    kind: str  # "cusp", "vertical-tangent" or "intersection"
    multiplicity: int = 0  # intersection multiplicity on this fiber (0 if none)

    def __str__(self):
        pos = format_number(self.x) if self.x is not None else f"~{self.approx:.6g}"
        extra = f", intersection multiplicity {self.multiplicity}" if self.multiplicity else ""
        return f"x = {pos} ({self.kind}{extra})"


class NonRealFiber(ValueError):
    pass


def singular_fibers(section: Section, curve: TrigonalCurve, strict: bool = False) -> list[SingularFiber]:
    """Real singular fibers of curve plus section, sorted by position.

    Non-real fibers raise ``NonRealFiber`` with ``strict``; otherwise they are
    left out (the families considered here have none)."""
    div = intersection_divisor(section, curve)
    fibers: dict = {}

    def add(x, approx, kind, mult):
        for key, f in fibers.items():
            same = (x is not None and f.x is not None and x == f.x) or abs(f.approx - approx) < 1e-9 * max(1, abs(approx))
            if same:
                k = f.kind if f.kind != "intersection" else kind
                fibers[key] = SingularFiber(f.x if f.x is not None else x, f.approx, k, f.multiplicity + mult)
                return
        fibers[len(fibers)] = SingularFiber(x, approx, kind, mult)

    add(Fraction(0), 0.0, "cusp", 0)
    add(curve.vertical_tangent_x, float(curve.vertical_tangent_x), "vertical-tangent", 0)
    for p in div.points:
        if not p.is_real:
            if strict:
                raise NonRealFiber(f"non-real intersection at t ~ {p.approx():.6g}")
            continue
        if p.exact:
            x = curve.x_t(p.t)
            add(x, float(x), "intersection", p.multiplicity)
        else:
            t = float(p.t)
            add(None, float(curve.r) * t * t + t**3, "intersection", p.multiplicity)
    return sorted(fibers.values(), key=lambda f: f.approx)


# the elimination behind the double tangent formula

@dataclass(frozen=True)
class DoubleTangentElimination:
    eliminant: Polynomial  # after removing the trivial factor (t1 - t2) from both equations
    factor: Polynomial  # (t1 - t2)^2 (3 t1 + 3 t2 + r)
    cofactor: Polynomial
    excluded: Polynomial  # (3 t1 + 2 r)(3 t2 + 2 r)
    degenerate: Polynomial  # locus where a drops out of both equations

    def verified(self) -> bool:
        """The cofactor is a constant times the excluded and degenerate loci."""
        q, rem = self.cofactor.divmod(self.excluded * self.degenerate)
        return rem.is_zero() and q.is_constant() and not q.is_zero()


def double_tangent_elimination() -> DoubleTangentElimination:
    """Eliminate ``a`` from the tangency conditions at ``t1`` and ``t2``."""
    t1, t2, r, a = (Polynomial.var(v) for v in ("t1", "t2", "r", "a"))

    def bc(t):
        # (b, c) of the tangent formula times (3t + 2r)
        d = t * 3 + r * 2
        return (t**2 * (t + r) * a * -2 * d - 2, t**4 * (t + r) ** 2 * a * d - t**3)

    d1, d2 = t1 * 3 + r * 2, t2 * 3 + r * 2
    b1, c1 = bc(t1)
    b2, c2 = bc(t2)
    eq_b = b1 * d2 - b2 * d1
    eq_c = c1 * d2 - c2 * d1
    diff = t1 - t2
    eq_b, rb = eq_b.divmod(diff)
    eq_c, rc = eq_c.divmod(diff)
    if not (rb.is_zero() and rc.is_zero()):
        raise ArithmeticError("tangency conditions do not vanish on the diagonal")
    elim = resultant(eq_b, eq_c, "a")
    factor = diff**2 * (t1 * 3 + t2 * 3 + r)
    cof, rem = elim.divmod(factor)
    if not rem.is_zero():
        cof = Polynomial.const(0)
    degenerate = (t1**2 * (t1 + r) - t2**2 * (t2 + r)).divmod(diff)[0]
    return DoubleTangentElimination(elim, factor, cof, d1 * d2, degenerate)


# named families

def _quadratic(d, a=0, b=0) -> QuadraticNumber:
    return QuadraticNumber(Fraction(a), Fraction(b), d)


def section_2e6_2a2_a3(curve: TrigonalCurve) -> Section:
    return tangent_section(-curve.r / 6, Fraction(-16, 3) / curve.r**4, curve)


def section_3e6_a1(curve: TrigonalCurve) -> Section:
    return cusp_tangent_section(-curve.r / 3, curve)


def section_2e6_a5_a2_1(curve: TrigonalCurve) -> Section:
    return inflection_section(_quadratic(3, Fraction(-1, 2), Fraction(1, 6)) * curve.r, curve)


def section_2e6_a5_a2_2(curve: TrigonalCurve) -> Section:
    return inflection_section(_quadratic(3, Fraction(-1, 2), Fraction(-1, 6)) * curve.r, curve)


NAMED = {
    "2e6+2a2+a3": section_2e6_2a2_a3,
    "3e6+a1": section_3e6_a1,
    "2e6+a5+a2.1": section_2e6_a5_a2_1,
    "2e6+a5+a2.2": section_2e6_a5_a2_2,
}


def named_section(name: str, curve: TrigonalCurve | None = None) -> Section:
    curve = curve or TrigonalCurve()
    try:
        return NAMED[name](curve)
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(NAMED)}") from None


# one member of each parametric family, parameters in units of r
FAMILY_MEMBERS: dict[str, Callable[[TrigonalCurve], Section]] = {
    "generic": lambda c: Section(1 / c.r**4, 1 / c.r, c.r**2),
    "tangent": lambda c: tangent_section(c.r / 3, 1 / c.r**4, c),
    "double-tangent": lambda c: double_tangent_section(c.r / 9, c),
    "quadruple": section_2e6_2a2_a3,
    "inflection": lambda c: inflection_section(c.r / 3, c),
    "cusp": lambda c: Section(1 / c.r**4, 1 / c.r, 0),
    "cusp-tangent": lambda c: cusp_tangent_section(c.r / 3, c),
    "inflection-through-cusp.1": section_2e6_a5_a2_1,
    "inflection-through-cusp.2": section_2e6_a5_a2_2,
    "tangent-through-cusp": lambda c: Section(1 / c.r**4, -1 / c.r, 0),
    "tangent-through-cusp+tangent": section_3e6_a1,
}


def family_report(name: str, curve: TrigonalCurve | None = None) -> dict:
    curve = curve or TrigonalCurve()
    if name in NAMED:
        s = NAMED[name](curve)
    elif name in FAMILY_MEMBERS:
        s = FAMILY_MEMBERS[name](curve)
    else:
        raise KeyError(f"unknown family {name!r}")
    div = intersection_divisor(s, curve)
    return {
        "family": name,
        "r": format_number(curve.r),
        "section": s.to_dict(),
        "divisor": div.to_dict(),
        "singular_fibers": [
            {"x": format_number(f.x) if f.x is not None else None, "approx": f.approx, "kind": f.kind,
             "multiplicity": f.multiplicity}
            for f in singular_fibers(s, curve)
        ],
        "singularities": str(classify_sextic(s, curve)),
    }


def sextic_polynomial(section: Section, curve: TrigonalCurve) -> Polynomial:
    """Affine equation ``f_r(x, y^2 + s(x))`` of the plane sextic."""
    x, y = Polynomial.var("x"), Polynomial.var("y")
    ybar = y**2 + x**2 * section.a + x * section.b + section.c
    return curve.polynomial().subs({"y": ybar})


def torus_decomposition(section: Section, curve: TrigonalCurve) -> tuple:
    """``(p, q)`` with ``p^3 + q^2`` equal to the sextic polynomial."""
    x, y = Polynomial.var("x"), Polynomial.var("y")
    ybar = y**2 + x**2 * section.a + x * section.b + section.c
    return ybar, ybar * curve._r() + x
