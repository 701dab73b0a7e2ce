from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import res as sylvester_res
from hypothesis import given, settings, strategies as st

from conftest import to_sympy
from sextic_groups.algebra import (
    AbelianInvariants,
    Polynomial,
    QuadraticNumber,
    discriminant,
    format_number,
    parse_number,
    resultant,
    smith_normal_form,
)
from sextic_groups.algebra import upoly, words

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
radicands = st.sampled_from([2, 3, 5, -1, -3])


@st.composite
def quadratics(draw, d=None):
    return QuadraticNumber(draw(fractions), draw(fractions), d if d is not None else 2)


def as_sympy(q: QuadraticNumber):
    return sympy.Rational(q.a.numerator, q.a.denominator) + sympy.Rational(q.b.numerator, q.b.denominator) * sympy.sqrt(q.d)


# quadratic field arithmetic, checked against sympy's exact radicals

@given(quadratics(), quadratics())
def test_quadratic_ring_ops_match_sympy(x, y):
    for got, want in ((x + y, as_sympy(x) + as_sympy(y)), (x - y, as_sympy(x) - as_sympy(y)),
                      (x * y, as_sympy(x) * as_sympy(y))):
        assert sympy.simplify(as_sympy(got) - want) == 0


@given(quadratics())
def test_quadratic_inverse(x):
    if x == 0:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
        return
    assert x * x.inverse() == 1
    assert x.norm() == x * x.conjugate()


@given(quadratics())
def test_quadratic_sign_agrees_with_float(x):
    v = float(as_sympy(x))
    assert x.sign() == (v > 0) - (v < 0)


@given(quadratics())
def test_format_parse_roundtrip(x):
    assert parse_number(format_number(x)) == x


def test_rational_values_compare_with_fractions():
    assert QuadraticNumber(Fraction(1, 2), 0, 3) == Fraction(1, 2)
    assert hash(QuadraticNumber(5, 0, 2)) == hash(Fraction(5))
    assert format_number(QuadraticNumber(-1, Fraction(3, 2), 2)) == "-1 + 3/2*sqrt(2)"


def test_bad_radicand():
    with pytest.raises(ValueError):
        QuadraticNumber(1, 1, 4)


# multivariate polynomials

def test_parse_and_print():
    p = Polynomial.parse("x^2*y - 3/2*y + x")
    assert to_sympy(p) == sympy.sympify("x**2*y - 3*y/2 + x")
    assert p.degree("x") == 2 and p.degree("y") == 1


small = st.integers(-4, 4)


@st.composite
def bivariate(draw):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small, max_size=5))
    return Polynomial({e: Fraction(c) for e, c in terms.items()}, ("y", "x"))


@settings(max_examples=40, deadline=None)
@given(bivariate(), bivariate())
def test_ring_ops_match_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0


@settings(max_examples=25, deadline=None)
@given(bivariate(), bivariate())
def test_resultant_matches_sympy(p, q):
    if p.degree("y") < 1 or q.degree("y") < 1:
        return
    y = sympy.Symbol("y")
    # sympy.resultant loses the sign on monomials such as y^3; use the Sylvester determinant
    want = sylvester_res(to_sympy(p), to_sympy(q), y)
    assert sympy.expand(to_sympy(resultant(p, q, "y")) - want) == 0


def test_discriminant_of_cubic_matches_sympy():
    p = Polynomial.parse("y^3 + r^2*y^2 + 2*r*x*y + x^2")
    y = sympy.Symbol("y")
    want = sympy.discriminant(to_sympy(p), y)
    assert sympy.expand(to_sympy(discriminant(p, "y")) - want) == 0


def test_subs_and_divmod():
    x, y = Polynomial.var("x"), Polynomial.var("y")
    p = (x + y) ** 3
    assert p.subs({"y": -x}).is_zero()
    q, r = p.divmod(x + y)
    assert r.is_zero() and q == (x + y) ** 2


# univariate helpers

@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_gcd_and_squarefree_against_sympy(a, b):
    p = upoly.mul(upoly.power(upoly.trim(a), 2), upoly.trim(b))
    if len(p) < 2:
        return
    t = sympy.Symbol("t")
    sp = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(p))
    sq = upoly.squarefree_part(p)
    want = sympy.Poly(sympy.sqf_part(sp), t).monic()
    assert tuple(sympy.Rational(c.numerator, c.denominator) for c in reversed(sq)) == tuple(want.all_coeffs())


def test_isolate_real_roots_counts():
    p = upoly.trim([-2, 0, 1])  # t^2 - 2
    iv = upoly.isolate_real_roots(p)
    assert len(iv) == 2
    assert iv[0][0] < -Fraction(14142, 10000) < iv[0][1] + Fraction(1, 10**4)


def test_field_roots_quadratic_and_rest():
    # (t - 1/3)^2 (t^2 - 2)(t^3 - 2)
    p = upoly.mul(upoly.mul(upoly.power((Fraction(-1, 3), 1), 2), (-2, 0, 1)), (-2, 0, 0, 1))
    exact, rest = upoly.field_roots(p, allow_radicands=(2,))
    values = dict((format_number(v), m) for v, m in exact)
    assert values == {"1/3": 2, "sqrt(2)": 1, "-sqrt(2)": 1}
    assert len(rest) == 3 and sum(r.is_real for r, _ in rest) == 1


# free group words

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)


@given(letters)
def test_free_reduce_idempotent_and_inverse(w):
    r = words.free_reduce(w)
    assert words.free_reduce(r) == r
    assert all(a != -b for a, b in zip(r, r[1:]))
    assert words.multiply(w, words.inverse(w)) == ()


@given(letters, letters)
def test_exponent_sums_additive(u, v):
    su, sv = words.exponent_sums(u, 3), words.exponent_sums(v, 3)
    assert words.exponent_sums(words.multiply(u, v), 3) == [a + b for a, b in zip(su, sv)]


def test_canonical_relator_is_cyclic_invariant():
    w = (1, 2, -1, 3)
    forms = {words.canonical_relator(r) for r in words.cyclic_rotations(w)}
    forms |= {words.canonical_relator(words.inverse(w))}
    assert len(forms) == 1


# Smith normal form against sympy

@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_matches_sympy(rows):
    from sympy.matrices.normalforms import invariant_factors

    res = smith_normal_form(rows)
    factors = [abs(int(f)) for f in invariant_factors(sympy.Matrix(rows))]
    rank = sum(1 for f in factors if f)
    want = AbelianInvariants.from_diagonal([f for f in factors if f], 3 - rank)
    assert res.invariants == want


def test_abelian_invariants_text():
    g = AbelianInvariants.from_diagonal([4, 6, 0])
    assert str(g) == "Z2 x Z12 x Z"
    assert AbelianInvariants.parse(str(g)) == g
    assert AbelianInvariants.parse("Z6").order == 6
