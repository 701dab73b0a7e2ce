import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from sextic_groups.fpgroups import (
    CosetCapExceeded,
    Presentation,
    abelianization,
    alexander_polynomial,
    catalogue,
    commutant_abelianization,
    double_cover,
    group_order,
    hom_count,
    power_quotient,
    reidemeister_schreier,
    tietze_simplify,
    todd_coxeter,
)
from sextic_groups.fpgroups.homs import FiniteGroup, gl23, invariant_key, sl23, symmetric_group
from sextic_groups.fpgroups.schreier import coset_representatives

B3 = Presentation.parse("gens: a, b; rels: a b a = b a b;")


def sympy_order(p: Presentation) -> int:
    """Order through sympy's own coset enumeration."""
    F, *gens = free_group(",".join(p.generators))
    if len(p.generators) == 1:
        gens = [gens[0]] if not isinstance(gens[0], tuple) else list(gens[0])
    rels = []
    for r in p.relators:
        w = F.identity
        for x in r:
            w = w * (gens[abs(x) - 1] if x > 0 else gens[abs(x) - 1] ** -1)
        rels.append(w)
    return int(FpGroup(F, rels).order())


FINITE = [
    "gens: a, b; rels: a^2, b^3, (a b)^3;",
    "gens: a, b; rels: a^2, b^3, (a b)^4;",
    "gens: a, b; rels: a^2, b^3, (a b)^5;",
    "gens: a, b; rels: a^4, a^2 = b^2, b^-1 a b = a^-1;",
    "gens: a, b, c; rels: a^2, b^2, c^2, (a b)^3, (b c)^3, (a c)^2;",
    "gens: s, t; rels: (s t)^2 = s^3, s^3 = t^3;",
    "gens: a, b; rels: a b a = b a b, a^2;",
    "gens: a, b; rels: a b a = b a b, a^4;",
]


@pytest.mark.parametrize("text", FINITE)
def test_todd_coxeter_matches_sympy(text):
    p = Presentation.parse(text)
    assert group_order(p) == sympy_order(p)


def test_known_orders():
    assert [group_order(Presentation.parse(t)) for t in FINITE] == [12, 24, 60, 8, 24, 24, 6, 96]


def test_subgroup_index_and_closure():
    p = Presentation.parse(FINITE[1])  # S4
    t = todd_coxeter(p, [p.word("a")])
    assert t.index == 12
    assert t.is_closed(p.relators)
    assert len(coset_representatives(t)) == 12


def test_cap_on_infinite_group():
    with pytest.raises(CosetCapExceeded):
        todd_coxeter(B3, cap=500)
    assert group_order(B3, cap=500) is None


def test_presentation_text_roundtrip_and_notes():
    text = "gens: x, y; rels: [x ; y], x^3 # order three\n, y^2;"
    p = Presentation.parse(text)
    assert p.format(p.relators[0]) == "x y x^-1 y^-1"
    assert p.notes == (None, "order three", None)
    assert Presentation.parse(p.to_text()).relators == p.relators


def test_presentation_errors():
    with pytest.raises(ValueError):
        Presentation.parse("gens: a; rels: b;")
    with pytest.raises(ValueError):
        Presentation.parse("gens: a, a; rels: a;")
    with pytest.raises(ValueError):
        Presentation.parse("gens: a, b; rels: (a b;")


@pytest.mark.parametrize("text", FINITE)
def test_tietze_preserves_order(text):
    p = Presentation.parse(text)
    q = tietze_simplify(p)
    assert group_order(q) == group_order(p)
    assert sum(map(len, q.relators)) <= sum(map(len, p.relators)) or q.rank < p.rank


def test_tietze_eliminates_definitions():
    p = Presentation.parse("gens: a, b, c; rels: c = a b, a b a = b a b, a^3;")
    q = tietze_simplify(p)
    assert q.rank == 2
    assert group_order(q) == 24  # B3 / a^3 is the binary tetrahedral group


def test_tietze_protected_generator_kept():
    p = Presentation.parse("gens: a, b, c; rels: c = a b, a^2, b^3, (a b)^3;")
    assert "c" in tietze_simplify(p, protected=["c"]).generators


def test_reidemeister_schreier_index_formula():
    p = Presentation.parse(FINITE[0])  # A4
    t = todd_coxeter(p, [p.word("b")])  # index 4
    sub = reidemeister_schreier(p, t)
    assert sub.rank == t.index * (p.rank - 1) + 1
    assert group_order(sub) == 3


def test_double_cover_halves_the_order():
    # S3 x C2, delta generating the C2 factor
    p = Presentation.parse("gens: a, b, d; rels: a^3, b^2, (a b)^2, d^2, [a ; d], [b ; d];")
    q = double_cover(p, "d")
    assert set(q.generators) == {"a", "abar", "b", "bbar"}
    assert group_order(q) == group_order(p) // 2


def test_double_cover_rejects_odd_relators():
    with pytest.raises(ValueError):
        double_cover(Presentation.parse("gens: a, d; rels: a d;"), "d")


# invariants

def test_abelianization_and_alexander_of_braid_group():
    assert str(abelianization(B3)) == "Z"
    assert str(alexander_polynomial(B3)) == "t^2 - t + 1"


def test_alexander_of_torus_knot_group():
    p = Presentation.parse("gens: x, y; rels: x^2 = y^3;")
    # trefoil again, degree map x -> t^3, y -> t^2
    assert str(alexander_polynomial(p, [3, 2])) == "t^2 - t + 1"


def test_alexander_free_abelian():
    p = Presentation.parse("gens: a, b; rels: [a ; b];")
    # Fox row (1 - t, t - 1)
    assert str(alexander_polynomial(p)) == "t - 1"


def test_power_quotients_of_b3():
    sq = power_quotient(B3, 2)
    assert (sq.order, sq.involutions) == (6, 3)
    assert power_quotient(B3, 4, count_involutions=False).order == 96


def test_commutant_of_s4():
    p = Presentation.parse(FINITE[1])
    # [S4, S4] = A4, whose abelianization is Z3
    assert str(commutant_abelianization(p)) == "Z3"


# homomorphism counts

def brute_force_homs(p: Presentation, g: FiniteGroup) -> tuple:
    homs = epis = 0
    for images in itertools.product(range(g.order), repeat=p.rank):
        if all(g.evaluate(r, images) == 0 for r in p.relators):
            homs += 1
            epis += len(g.generated(images)) == g.order
    return homs, epis


@pytest.mark.parametrize("name", ["S3", "A4", "Q8", "D10", "C2xC2", "S4"])
def test_hom_count_matches_brute_force(name):
    g = next(x for x in catalogue() if x.name == name)
    for p in (B3, Presentation.parse(FINITE[0]), Presentation.parse("gens: a, b; rels: [a ; b];")):
        assert hom_count(p, g) == brute_force_homs(p, g)


def test_catalogue_counts_match_known_numbers_of_groups():
    # numbers of groups of order 1..24
    known = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15]
    counts = Counter(g.order for g in catalogue())
    assert [counts[n] for n in range(1, 25)] == known


def test_catalogue_groups_are_pairwise_distinct():
    groups = catalogue()
    keys = [invariant_key(g) for g in groups]
    # invariant keys plus hom counts from B3 separate everything
    fine = [(k, hom_count(B3, g)) for k, g in zip(keys, groups)]
    assert len(set(fine)) >= len(groups) - 2


def test_matrix_groups():
    assert gl23().order == 48 and sl23().order == 24
    assert sum(1 for g in range(48) if gl23().element_order(g) == 2) == 13
    assert sum(1 for g in range(24) if sl23().element_order(g) == 2) == 1
    assert symmetric_group(4).order == 24


def test_finite_group_text_roundtrip():
    g = symmetric_group(3)
    h = FiniteGroup.parse(g.to_text())
    assert h.order == 6 and invariant_key(h) == invariant_key(g)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 7), st.integers(2, 7))
def test_cyclic_product_orders(m, n):
    p = Presentation.parse(f"gens: a, b; rels: a^{m}, b^{n}, [a ; b];")
    assert group_order(p) == m * n
    assert abelianization(p).order == m * n
