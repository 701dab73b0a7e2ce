"""One test per acceptance criterion; each prints a PASS/FAIL line.

Three criteria cannot pass as published. Their tests pin the exact
discrepancy (so any other regression still fails) and are then reported as
expected failures.
"""

import pytest

from sextic_groups import acceptance

OPTS = acceptance.Options()  # 3 significant figures, coset cap 10^6, r = 3

TOLERANCES = {
    1: "exact",
    2: "exact",
    3: "exact",
    4: "exact field equality",
    5: "3 significant figures; patterns exact",
    6: "exact set equality",
    7: "exact automorphism equality",
    8: "identical invariant suites",
    9: "exact",
    10: "exact orders and involution counts",
    11: "exact",
    12: "strict inequalities",
    13: "identical invariant suites",
    14: "exact set equality",
    15: "equality",
}
# seconds; 7 is 60 s for each of the four configurations
BUDGETS = {7: 240.0, 10: 30.0, 15: 120.0}


def _quadruple_rounding(o):
    # exact root -19/2 - 27/4 sqrt(2) = -19.046 rounds to -19.0, not -19.1
    exp, act = o.expected, o.actual
    assert act["2e6+2a2+a3"]["x"] == [-19.0, 0.0459, 0.625]
    assert exp["2e6+2a2+a3"]["x"] == [-19.1, 0.0459, 0.625]
    assert act["2e6+2a2+a3 closed forms"] is True
    assert {k: v for k, v in act.items() if k != "2e6+2a2+a3"} == {k: v for k, v in exp.items() if k != "2e6+2a2+a3"}
    return "published -19.1 is a rounding slip for -19.046"


def _singular_infinity(o):
    for family, row in o.actual.items():
        assert row == {"conjugation_by_rho2": False, "equals_big_circle_braid": True}, family
    return "fiber at infinity is singular; product equals the big-circle braid instead"


def _gl23(o):
    diff = {k for k in o.expected if o.expected[k] != o.actual[k]}
    assert diff == {"G3 mod squares", "G3 mod squares involutions"}
    assert (o.actual["G3 mod squares"], o.actual["G3 mod squares involutions"]) == (48, 13)
    return "G3 mod squares is GL(2,3) (order 48, 13 involutions), not SL(2,3)"


KNOWN_FAILURES = {5: _quadruple_rounding, 7: _singular_infinity, 10: _gl23}


@pytest.mark.parametrize("number", sorted(TOLERANCES))
def test_criterion(number, capsys):
    (crit,) = acceptance.criteria(numbers=[number])
    assert crit.tolerance == TOLERANCES[number]
    assert crit.budget == BUDGETS.get(number)
    (o,) = acceptance.run(OPTS, numbers=[number])
    with capsys.disabled():
        print(f"\n  criterion {number:2d} {o.status}: {crit.title} ({o.seconds:.1f} s)")
    if number in KNOWN_FAILURES:
        assert o.status == "FAIL"
        pytest.xfail(KNOWN_FAILURES[number](o))
    assert o.status == "PASS", o.note


def test_table_summary_line():
    table = acceptance.format_table(acceptance.run(OPTS, numbers=[1, 2, 14]))
    assert table.splitlines()[-1] == "3 passed, 0 failed, 0 skipped"


def test_corpus_only_skips_numeric_criteria():
    outs = acceptance.run(acceptance.Options(corpus_only=True), numbers=[7, 8, 9])
    assert [o.status for o in outs] == ["SKIP", "SKIP", "PASS"]


def test_part_filter():
    assert [c.number for c in acceptance.criteria(part=3)] == [7]
    assert [c.number for c in acceptance.criteria(part=5)] == [14]
