import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import to_sympy
from sextic_groups.curves import (
    FAMILY_MEMBERS,
    NAMED,
    DegenerateSection,
    ExcludedParameter,
    Section,
    TrigonalCurve,
    classify_sextic,
    curve_discriminant,
    cusp_tangent_section,
    double_tangent_elimination,
    double_tangent_section,
    family_report,
    inflection_section,
    intersection_divisor,
    named_section,
    sextic_polynomial,
    singular_fibers,
    tangent_section,
    torus_decomposition,
    verify_parameterization,
)

T = sympy.Symbol("t")
X, Y, R = sympy.symbols("x y r")


def contact_order(section: Section, curve: TrigonalCurve, t) -> int:
    """Order of vanishing of s(x(t)) - y(t) at t, computed by sympy."""
    r = sympy.sympify(str(curve.r).replace("^", "**"))
    coeffs = [sympy.sympify(str(v)) for v in (section.a, section.b, section.c)]
    x_t = r * T**2 + T**3
    f = sympy.expand(coeffs[0] * x_t**2 + coeffs[1] * x_t + coeffs[2] + T**2)
    t0 = sympy.sympify(str(t))
    k = 0
    while sympy.simplify(f.subs(T, t0)) == 0:
        f = sympy.diff(f, T)
        k += 1
    return k


def test_parameterization_identity_symbolic():
    curve = TrigonalCurve(None)
    assert verify_parameterization(curve)
    f = to_sympy(curve.polynomial())
    assert sympy.expand(f.subs({X: R * T**2 + T**3, Y: -T**2})) == 0


def test_curve_discriminant_matches_sympy():
    curve = TrigonalCurve(None)
    want = sympy.discriminant(to_sympy(curve.polynomial()), Y)
    got = to_sympy(curve_discriminant(curve))
    assert sympy.expand(got - want) == 0
    # cusp at x = 0 and vertical tangency at x = 4 r^3 / 27
    assert sympy.factor(want) == sympy.factor(-(X**3) * (27 * X - 4 * R**3))


params = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(lambda t: t != 0)


@settings(max_examples=15, deadline=None)
@given(params, st.fractions(min_value=-2, max_value=2, max_denominator=5).filter(bool))
def test_tangent_section_is_tangent(t, a):
    curve = TrigonalCurve(3)
    if t == -2:
        with pytest.raises(ExcludedParameter):
            tangent_section(t, a, curve)
        return
    assert contact_order(tangent_section(t, a, curve), curve, t) >= 2


@settings(max_examples=10, deadline=None)
@given(params)
def test_inflection_section_has_contact_three(t):
    curve = TrigonalCurve(3)
    if t == -2:
        return
    assert contact_order(inflection_section(t, curve), curve, t) >= 3


@settings(max_examples=10, deadline=None)
@given(params)
def test_double_tangent_section(t):
    curve = TrigonalCurve(3)
    if t in (Fraction(-1, 2), -2, -1, 1):
        with pytest.raises(ExcludedParameter):
            double_tangent_section(t, curve)
        return
    s = double_tangent_section(t, curve)
    assert contact_order(s, curve, t) >= 2
    assert contact_order(s, curve, -1 - t) >= 2


@settings(max_examples=10, deadline=None)
@given(params)
def test_cusp_tangent_section(t):
    curve = TrigonalCurve(3)
    if t in (-3, -2):
        return
    s = cusp_tangent_section(t, curve)
    assert s.c == 0 and contact_order(s, curve, t) >= 2


def test_double_tangent_elimination_verified():
    e = double_tangent_elimination()
    assert e.verified()


def test_torus_decomposition_matches_sextic():
    curve = TrigonalCurve(3)
    s = named_section("3e6+a1", curve)
    p, q = torus_decomposition(s, curve)
    lhs = to_sympy(sextic_polynomial(s, curve))
    rhs = to_sympy(p) ** 3 + to_sympy(q) ** 2
    assert sympy.expand(lhs - rhs) == 0


EXPECTED = {
    "2e6+2a2+a3": "(2E6+2A2)+A3",
    "3e6+a1": "(3E6)+A1",
    "2e6+a5+a2.1": "(2E6+A5)+A2",
    "2e6+a5+a2.2": "(2E6+A5)+A2",
}


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_classification(name):
    assert str(classify_sextic(named_section(name), TrigonalCurve())) == EXPECTED[name]


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_families_are_exact_over_other_r(name):
    # r scales out: the singularity type does not depend on r
    for r in (Fraction(1), Fraction(2), Fraction(5, 2)):
        curve = TrigonalCurve(r)
        assert str(classify_sextic(named_section(name, curve), curve)) == EXPECTED[name]


def test_divisor_sums_to_six_and_fibers():
    curve = TrigonalCurve()
    s = named_section("3e6+a1", curve)
    div = intersection_divisor(s, curve)
    assert div.total == 6 and div.pattern() == (3, 2, 1)
    assert [f.approx for f in singular_fibers(s, curve)] == [-16.0, 0.0, 2.0, 4.0]
    json.loads(div.to_json())


def test_quadruple_family_fibers_are_exact():
    curve = TrigonalCurve()
    fibers = singular_fibers(named_section("2e6+2a2+a3", curve), curve)
    assert [f.x is not None for f in fibers] == [True] * 5
    approx = [round(f.approx, 4) for f in fibers]
    assert approx == [-19.0459, 0.0, 0.0459, 0.625, 4.0]


def test_section_through_vertical_tangency_rejected():
    curve = TrigonalCurve(3)
    t = Fraction(-2)
    # any section through (x(t), y(t)) = (4, -4) with the cusp excluded
    s = Section(1, 0, -20)
    assert s(curve.x_t(t)) == curve.y_t(t)
    with pytest.raises(DegenerateSection):
        classify_sextic(s, curve)


def test_section_json_roundtrip():
    s = named_section("2e6+a5+a2.1")
    assert Section.from_dict(json.loads(s.to_json())) == s
    with pytest.raises(ValueError):
        Section(0, 1, 1)


@pytest.mark.parametrize("name", sorted(FAMILY_MEMBERS))
def test_family_reports(name):
    rep = family_report(name)
    assert rep["divisor"]["total"] == 6
    assert rep["singularities"].startswith("(")
