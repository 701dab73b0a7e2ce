"""The acceptance criteria as runnable checks.

Every expected value below is recorded with its provenance: ``paper`` for
values stated in the source article, ``derived`` for values obtained from an
independent computation. Criteria are tagged with the part of the theory they
exercise (2 geometry, 3 monodromy, 4 groups, 5 perturbations) so the
command line can filter them.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra.polynomial import Polynomial
from .algebra.quadratic import QuadraticNumber
from .singularities import SingularitySet, parse_sum

PAPER = "paper"
DERIVED = "derived"


@dataclass
class Options:
    sig_figs: int = 3
    coset_cap: int = 1_000_000
    corpus_only: bool = False
    precision_bits: int = 200
    r: Fraction = Fraction(3)


@dataclass
class Outcome:
    number: int
    title: str
    part: int
    expected: object
    actual: object
    tolerance: str
    provenance: str
    passed: bool | None  # None means skipped
    seconds: float = 0.0
    note: str = ""

    @property
    def status(self) -> str:
        return {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]

    def as_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "part": self.part,
            "status": self.status,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "tolerance": self.tolerance,
            "provenance": self.provenance,
            "seconds": round(self.seconds, 3),
            "note": self.note,
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


@dataclass
class Criterion:
    number: int
    title: str
    part: int
    tolerance: str
    provenance: str
    check: Callable[[Options], tuple]  # -> (expected, actual, passed[, note])
    numeric: bool = False  # needs the monodromy module
    budget: float | None = None  # seconds

    def run(self, opts: Options) -> Outcome:
        if self.numeric and opts.corpus_only:
            return Outcome(self.number, self.title, self.part, None, None, self.tolerance,
                           self.provenance, None, note="skipped in corpus-only mode")
        start = time.perf_counter()
        try:
            res = self.check(opts)
        except Exception as exc:  # a crash is a failed criterion, not a crashed suite
            res = (None, f"{type(exc).__name__}: {exc}", False)
        secs = time.perf_counter() - start
        expected, actual, passed = res[:3]
        note = res[3] if len(res) > 3 else ""
        if passed and self.budget is not None and secs > self.budget:
            passed, note = False, f"over the {self.budget:g} s budget"
        return Outcome(self.number, self.title, self.part, expected, actual, self.tolerance,
                       self.provenance, bool(passed), secs, note)


# geometry

def _c1_discriminant(opts):
    from .curves import TrigonalCurve, curve_discriminant

    disc = curve_discriminant(TrigonalCurve(None))
    x, r = Polynomial.var("x"), Polynomial.var("r")
    found = {}
    for label, factor in (("0", x), ("4r^3/27", x * 27 - r**3 * 4)):
        m, rest = 0, disc
        while True:
            q, rem = rest.divmod(factor)
            if not rem.is_zero():
                break
            m, rest = m + 1, q
        found[label] = m
    leftover = disc
    for label, factor in (("0", x), ("4r^3/27", x * 27 - r**3 * 4)):
        leftover = leftover.divmod(factor ** found[label])[0]
    expected = {"0": 3, "4r^3/27": 1}
    ok = found == expected and leftover.degree("x") == 0 and not leftover.is_zero()
    return expected, {**found, "cofactor": str(leftover)}, ok


def _c2_parameterization(opts):
    from .curves import TrigonalCurve, verify_parameterization

    ok = verify_parameterization(TrigonalCurve(None))
    return "f_r(x_t, y_t) = 0", "f_r(x_t, y_t) = 0" if ok else "nonzero", ok


def _c3_double_tangent(opts):
    from .curves import double_tangent_elimination

    e = double_tangent_elimination()
    t1, t2, r = (Polynomial.var(v) for v in ("t1", "t2", "r"))
    expected = (t1 - t2) ** 2 * (t1 * 3 + t2 * 3 + r)
    divides = expected.divides(e.eliminant)
    ok = divides and e.verified()
    actual = f"{expected} divides the eliminant" if divides else "factor missing"
    return str(expected), actual, ok


def _sqrt3(a, b):
    return QuadraticNumber(a, b, 3)


def _expected_coefficients(r: Fraction) -> dict:
    # closed forms in r for the four named families
    return {
        "2e6+2a2+a3": (Fraction(-16, 3) / r**4, Fraction(-88, 81) / r, r**2 / 4374),
        "3e6+a1": (Fraction(-27, 4) / r**4, -1 / r, Fraction(0)),
        "2e6+a5+a2.1": (_sqrt3(36, -24) / r**4, _sqrt3(-8, 4) / r, Fraction(0)),
        "2e6+a5+a2.2": (_sqrt3(36, 24) / r**4, _sqrt3(-8, -4) / r, Fraction(0)),
    }


def _c4_coefficients(opts):
    from .algebra.quadratic import format_number
    from .curves import TrigonalCurve, named_section

    ok, expected_out, actual_out = True, {}, {}
    for r in (opts.r, Fraction(1), Fraction(5, 7)):
        curve = TrigonalCurve(r)
        for name, want in _expected_coefficients(r).items():
            s = named_section(name, curve)
            got = (s.a, s.b, s.c)
            ok &= all(g == w for g, w in zip(got, want))
            if r == opts.r:
                expected_out[name] = [format_number(w) for w in want]
                actual_out[name] = [format_number(g) for g in got]
    return expected_out, actual_out, ok


EXPECTED_INTERSECTIONS = {
    # x-values of the intersection points away from the cusp, and the pattern
    "2e6+2a2+a3": ((0.0459, -19.1, 0.625), (4, 1, 1)),
    "3e6+a1": ((-16.0, 2.0), (3, 2, 1)),
    "2e6+a5+a2.1": ((-18.4, 0.951), (3, 2, 1)),
    "2e6+a5+a2.2": ((4.94, 3.55), (3, 2, 1)),
}


def round_sig(x: float, digits: int) -> float:
    if x == 0:
        return 0.0
    return round(x, digits - 1 - int(math.floor(math.log10(abs(x)))))


def _c5_intersections(opts):
    from .curves import TrigonalCurve, intersection_divisor, named_section

    curve = TrigonalCurve(Fraction(3))
    ok, actual = True, {}
    for name, (xs, pattern) in EXPECTED_INTERSECTIONS.items():
        div = intersection_divisor(named_section(name, curve), curve)
        got = sorted(round_sig(float(curve.x_t(p.t)) if p.exact else _x_of(curve, p), opts.sig_figs)
                     for p in div.points if not p.at_cusp)
        ok &= got == sorted(round_sig(x, opts.sig_figs) for x in xs)
        ok &= div.pattern() == pattern and div.total == 6
        actual[name] = {"x": got, "pattern": div.pattern(), "total": div.total}
    expected = {n: {"x": sorted(xs), "pattern": p, "total": 6} for n, (xs, p) in EXPECTED_INTERSECTIONS.items()}
    # the closed forms behind the first triple, in units of r^3
    exact = [QuadraticNumber(Fraction(-19, 54), s, 2) for s in (Fraction(1, 4), Fraction(-1, 4))] + [Fraction(5, 216)]
    div = intersection_divisor(named_section("2e6+2a2+a3", curve), curve)
    got_exact = [curve.x_t(p.t) / curve.r**3 for p in div.points if p.exact and not p.at_cusp]
    closed = all(any(g == e for g in got_exact) for e in exact)
    expected["2e6+2a2+a3 closed forms"] = True
    actual["2e6+2a2+a3 closed forms"] = closed
    ok &= closed
    note = ""
    if not ok and closed:
        bad = {n: v["x"] for n, v in actual.items() if isinstance(v, dict) and v["x"] != expected[n]["x"]}
        note = f"exact closed forms agree; rounded values differ for {bad}"
    return expected, actual, ok, note


def _x_of(curve, point) -> float:
    t = complex(point.t).real
    return float(curve.r) * t * t + t**3


TABLE_ROWS = (
    "(3E6)+A1",
    "(3E6)",
    "(2E6+A5)+A2",
    "(2E6+A5)+A1",
    "(2E6+A5)",
    "(2E6+2A2)+A3",
    "(2E6+2A2)+A2",
    "(2E6+2A2)+2A1",
    "(2E6+2A2)+A1",
    "(2E6+2A2)",
)


def _c6_classification(opts):
    from .curves import FAMILY_MEMBERS, TrigonalCurve, classify_sextic

    curve = TrigonalCurve(opts.r)
    realized = {str(classify_sextic(build(curve), curve)) for build in FAMILY_MEMBERS.values()}
    expected = {str(SingularitySet.parse(row)) for row in TABLE_ROWS}
    return expected, realized, realized == expected


# monodromy

FAMILIES = ("3e6+a1", "2e6+2a2+a3", "2e6+a5+a2.1", "2e6+a5+a2.2")
REFERENCE = {"3e6+a1": "G0", "2e6+2a2+a3": "G3", "2e6+a5+a2.1": "G2.1", "2e6+a5+a2.2": "G2.2"}


def _monodromy(name: str, opts):
    from .monodromy import braid_monodromy, configuration

    config = configuration(name, opts.r, precision_bits=opts.precision_bits)
    return config, braid_monodromy(config)


def _c7_infinity(opts):
    from .monodromy import infinity_check

    ok, actual, notes = True, {}, []
    for name in FAMILIES:
        config, md = _monodromy(name, opts)
        chk = infinity_check(md, config)
        ok &= chk.conjugation_by_rho
        actual[name] = {
            "conjugation_by_rho2": chk.conjugation_by_rho,
            "equals_big_circle_braid": chk.matches_boundary,
        }
        if not chk.conjugation_by_rho and chk.matches_boundary:
            notes.append(name)
    note = ""
    if notes:
        note = ("product equals the braid along a big circle but not conjugation by rho^2 "
                "(the fiber at infinity is singular): " + ", ".join(notes))
    return {n: {"conjugation_by_rho2": True} for n in FAMILIES}, actual, ok, note


def _suite(p, opts):
    from .fpgroups.invariants import invariant_suite

    d = invariant_suite(p, cap=opts.coset_cap).as_dict()
    d.pop("mod_squares_involutions", None)
    return d


def _c8_presentations(opts):
    from .fpgroups import corpus
    from .fpgroups.schreier import double_cover
    from .fpgroups.tietze import tietze_simplify
    from .fpgroups.vankampen import vankampen

    ok, expected, actual = True, {}, {}
    for name in FAMILIES:
        _, md = _monodromy(name, opts)
        p = tietze_simplify(double_cover(vankampen(md, md.k), "delta"))
        got = _suite(p, opts)
        want = _suite(corpus.group(REFERENCE[name]), opts)
        ok &= got == want
        expected[name] = {"group": REFERENCE[name], **want}
        actual[name] = got
    return expected, actual, ok


# groups

CORPUS_GROUPS = ("G0", "G3", "G2.1", "G2.2", "B3")


def _c9_abelianization(opts):
    from .fpgroups import corpus
    from .fpgroups.invariants import abelianization

    actual = {g: str(abelianization(corpus.group(g))) for g in CORPUS_GROUPS}
    expected = {g: "Z6" for g in CORPUS_GROUPS}
    return expected, actual, actual == expected


def _c10_quotients(opts):
    from .fpgroups import corpus
    from .fpgroups.invariants import power_quotient

    def q(name, n):
        return power_quotient(corpus.group(name), n, cap=opts.coset_cap)

    b3_2, g0_2, g3_2 = q("B3", 2), q("G0", 2), q("G3", 2)
    g0_4, g3_4 = q("G0", 4), q("G3", 4)
    expected = {
        "B3 mod squares": 6,
        "G0 mod squares": 24,
        "G0 mod squares involutions": 9,
        "G3 mod squares": 24,
        "G3 mod squares involutions": 1,
        "G0 mod 4th powers": 192,
        "G3 mod 4th powers": 1536,
    }
    actual = {
        "B3 mod squares": b3_2.order,
        "G0 mod squares": g0_2.order,
        "G0 mod squares involutions": g0_2.involutions,
        "G3 mod squares": g3_2.order,
        "G3 mod squares involutions": g3_2.involutions,
        "G0 mod 4th powers": g0_4.order,
        "G3 mod 4th powers": g3_4.order,
    }
    bad = [k for k in expected if expected[k] != actual[k]]
    note = ("mismatch: " + ", ".join(bad)) if bad else ""
    return expected, actual, not bad, note


def _c11_alexander(opts):
    from .fpgroups import corpus
    from .fpgroups.invariants import alexander_polynomial, commutant_abelianization

    expected, actual = {}, {}
    for g in CORPUS_GROUPS:
        p = corpus.group(g)
        comm = "Z2 x Z2 x Z x Z" if g.startswith("G2") else "Z x Z"
        expected[g] = {"alexander": "t^2 - t + 1", "commutant": comm}
        actual[g] = {
            "alexander": str(alexander_polynomial(p)),
            "commutant": str(commutant_abelianization(p)),
        }
    return expected, actual, expected == actual


def _c12_proper(opts):
    from .fpgroups import corpus
    from .fpgroups.invariants import commutant_abelianization, power_quotient

    def order(name, n):
        return power_quotient(corpus.group(name), n, cap=opts.coset_cap, count_involutions=False).order

    g3_4, g0_4 = order("G3", 4), order("G0", 4)
    g0_2, b3_2 = order("G0", 2), order("B3", 2)
    b3_comm = str(commutant_abelianization(corpus.group("B3")))
    g2 = {g: str(commutant_abelianization(corpus.group(g))) for g in ("G2.1", "G2.2")}
    ok = g3_4 > g0_4 and g0_2 > b3_2 and all(v != b3_comm for v in g2.values())
    expected = {"G3 vs G0 mod 4th powers": "1536 > 192", "G0 vs B3 mod squares": "24 > 6",
                "G2 commutants differ from B3's": True}
    actual = {"G3 vs G0 mod 4th powers": f"{g3_4} > {g0_4}", "G0 vs B3 mod squares": f"{g0_2} > {b3_2}",
              "G2 commutants differ from B3's": all(v != b3_comm for v in g2.values())}
    return expected, actual, ok


def _c13_rewriting(opts):
    from .fpgroups import corpus
    from .fpgroups.perturbation import apply_perturbation, corpus_presentation, outer_rules

    expected_groups = {
        "3e6+a1:A1->empty": "B3",
        "2e6+2a2+a3:A3->2A1": "G0",
        "2e6+2a2+a3:A3->A1": "B3",
        "2e6+a5+a2.1:A2->A1": "B3",
    }
    rules = outer_rules()
    known = {g: _suite(corpus.group(g), opts) for g in CORPUS_GROUPS}
    ok, actual = True, {}
    for key, want in expected_groups.items():
        source, rule = rules[key]
        got = _suite(apply_perturbation(corpus_presentation(source), rule), opts)
        hit = [g for g, suite in known.items() if suite == got]
        actual[key] = hit[0] if len(hit) == 1 else (hit or got)
        ok &= hit == [want]
    return expected_groups, actual, ok


# perturbations

EXPECTED_E6 = {
    "2A2+A1": "B4",
    "A5": "B3", "2A2": "B3",
    "D5": "Z", "D4": "Z", "A4+A1": "Z", "A4": "Z", "A3+A1": "Z", "A3": "Z",
    "A2": "Z", "A2+A1": "Z", "A2+2A1": "Z",
    "empty": "Z", "A1": "Z", "2A1": "Z", "3A1": "Z",
}
EXPECTED_A5 = {
    "2A2": "B3",
    "A3+A1": "ZxZ", "3A1": "ZxZ",
    "A4": "Z", "A3": "Z", "A2+A1": "Z", "A2": "Z", "empty": "Z", "A1": "Z", "2A1": "Z",
}
EXPECTED_A2 = {"A1": "Z", "empty": "Z"}


def _local_table(point: str) -> dict:
    from .fpgroups import perturbation as pt

    short = {pt.BRAID_B4: "B4", pt.BRAID_B3: "B3", pt.ABELIAN: "ZxZ", pt.CYCLIC: "Z"}
    out = {}
    for result, cls in pt.local_perturbations(point):
        key = _canonical(result)
        out[key] = short.get(cls, cls)
    return out


def _canonical(points) -> str:
    from .singularities import format_sum

    return format_sum(tuple(sorted(points, reverse=True))) or "empty"


def _c14_enumeration(opts):
    expected = {
        "E6": {_canonical(parse_sum(k)) if k != "empty" else "empty": v for k, v in EXPECTED_E6.items()},
        "A5": {_canonical(parse_sum(k)) if k != "empty" else "empty": v for k, v in EXPECTED_A5.items()},
        "A2": EXPECTED_A2,
    }
    actual = {p: _local_table(p) for p in ("E6", "A5", "A2")}
    return expected, actual, expected == actual


def _c15_fingerprint(opts):
    from .fpgroups import corpus
    from .fpgroups.homs import catalogue, fingerprint
    from .fpgroups.tietze import tietze_simplify

    targets = catalogue(24)
    a = fingerprint(tietze_simplify(corpus.group("G2.1")), targets)
    b = fingerprint(tietze_simplify(corpus.group("G2.2")), targets)
    diff = a.differences(b)
    nonzero = {k for k, v in a.as_dict().items() if v["epis"]}
    actual = {"targets": len(targets), "differences": diff, "epimorphisms onto": sorted(nonzero)}
    return {"targets": len(targets), "differences": []}, actual, not diff


CRITERIA = (
    Criterion(1, "discriminant root multiset", 2, "exact", PAPER, _c1_discriminant),
    Criterion(2, "parameterization identity", 2, "exact", PAPER, _c2_parameterization),
    Criterion(3, "double tangent elimination factor", 2, "exact", PAPER, _c3_double_tangent),
    Criterion(4, "named family coefficients", 2, "exact field equality", PAPER, _c4_coefficients),
    Criterion(5, "intersection data at r=3", 2, "3 significant figures; patterns exact", PAPER, _c5_intersections),
    Criterion(6, "singularity classification table", 2, "exact set equality", PAPER, _c6_classification),
    Criterion(7, "monodromy at infinity", 3, "exact automorphism equality", PAPER, _c7_infinity,
              numeric=True, budget=240.0),
    Criterion(8, "presentation regression", 4, "identical invariant suites", PAPER, _c8_presentations,
              numeric=True),
    Criterion(9, "abelianization", 4, "exact", PAPER, _c9_abelianization),
    Criterion(10, "finite quotients", 4, "exact orders and involution counts", PAPER, _c10_quotients,
              budget=30.0),
    Criterion(11, "Alexander data", 4, "exact", PAPER, _c11_alexander),
    Criterion(12, "properness of the epimorphisms", 4, "strict inequalities", PAPER, _c12_proper),
    Criterion(13, "perturbation collapses", 4, "identical invariant suites", PAPER, _c13_rewriting),
    Criterion(14, "perturbation enumeration", 5, "exact set equality", PAPER, _c14_enumeration),
    Criterion(15, "hom fingerprint parity", 4, "equality", DERIVED, _c15_fingerprint, budget=120.0),
)


def criteria(part: int | None = None, numbers=None) -> list[Criterion]:
    out = [c for c in CRITERIA if part is None or c.part == part]
    if numbers:
        out = [c for c in out if c.number in set(numbers)]
    return out


def run(opts: Options | None = None, part: int | None = None, numbers=None) -> list[Outcome]:
    opts = opts or Options()
    return [c.run(opts) for c in criteria(part, numbers)]


def format_table(outcomes: list[Outcome]) -> str:
    lines = []
    for o in outcomes:
        lines.append(f"[{o.status}] {o.number:2d}. {o.title} ({o.provenance}; tolerance: {o.tolerance}; "
                     f"{o.seconds:.1f} s)")
        if o.passed is not True:
            lines.append(f"       expected: {_jsonable(o.expected)}")
            lines.append(f"       actual:   {_jsonable(o.actual)}")
        if o.note:
            lines.append(f"       note: {o.note}")
    passed = sum(1 for o in outcomes if o.passed)
    failed = sum(1 for o in outcomes if o.passed is False)
    lines.append(f"{passed} passed, {failed} failed, {len(outcomes) - passed - failed} skipped")
    return "\n".join(lines)
