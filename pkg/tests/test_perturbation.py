import pytest

from sextic_groups.fpgroups import Presentation, abelianization, apply_perturbation, corpus, enumerate_perturbations, invariant_suite
from sextic_groups.fpgroups.perturbation import (
    ABELIAN,
    BRAID_B3,
    BRAID_B4,
    CYCLIC,
    PerturbationRule,
    UnsupportedSingularity,
    a_perturbations,
    corpus_presentation,
    a_twist_exponent,
    local_group_class,
    local_rule,
    outer_rules,
    torus_link_relation,
)
from sextic_groups.singularities import Singularity, SingularitySet, parse_sum


def names(sets):
    return {"+".join(map(str, s)) for s in sets}


def test_a_perturbations():
    assert names(a_perturbations(3)) == {"A2", "A1+A1", "A1", ""}
    # A5: every set with sum(p_i + 1) <= 6 other than A5 itself
    assert "A2+A2" in names(a_perturbations(5))
    assert "A5" not in names(a_perturbations(5))
    assert len(a_perturbations(5)) == 10


@pytest.mark.parametrize(
    "point, result, cls",
    [
        ("A3", "A1+A1", ABELIAN),
        ("A3", "A1", CYCLIC),
        ("A5", "A2+A2", BRAID_B3),
        ("A5", "A1+A1+A1", ABELIAN),
        ("A5", "A4", CYCLIC),
        ("E6", "A5", BRAID_B3),
        ("E6", "A2+A2+A1", BRAID_B4),
        ("E6", "D5", CYCLIC),
    ],
)
def test_local_group_classes(point, result, cls):
    assert local_group_class(point, parse_sum(result)) == cls


def test_twist_exponent_rejects_non_perturbations():
    with pytest.raises(ValueError):
        a_twist_exponent(2, parse_sum("A3"))
    with pytest.raises(ValueError):
        local_group_class("A3", parse_sum("A3"))


def test_enumerate_one_step():
    out = enumerate_perturbations(SingularitySet.parse("(E6)"))
    assert len(out) == 16
    out = enumerate_perturbations(SingularitySet.parse("(E6)+A1"))
    assert SingularitySet.parse("(E6)") in out
    assert SingularitySet.parse("(A5)+A1") in out


def test_enumerate_d_points():
    s = SingularitySet.parse("(D4)+A1")
    with pytest.raises(UnsupportedSingularity):
        enumerate_perturbations(s)
    assert enumerate_perturbations(s, strict=False) == [SingularitySet.parse("(D4)")]


def test_torus_link_relations():
    assert torus_link_relation("a", "b", 1) == "a = b"
    assert torus_link_relation("a", "b", 2) == "a b = b a"
    assert torus_link_relation("a", "b", 3) == "a b a = b a b"
    assert torus_link_relation("a", "b c", 4) == "(a (b c))^2 = ((b c) a)^2"


def test_rule_checks_local_class():
    with pytest.raises(ValueError):
        PerturbationRule("x", Singularity("A", 3), parse_sum("A1"), ("a = b",), ABELIAN)


def test_apply_rule_to_b3():
    b3 = Presentation.parse("gens: a, b; rels: a b a = b a b;")
    rule = PerturbationRule("node", Singularity("A", 3), parse_sum("2A1"), ("a b = b a",), ABELIAN)
    q = apply_perturbation(b3, rule)
    assert str(abelianization(q)) == "Z"
    assert q.rank == 1
    bad = PerturbationRule("cusp", Singularity("A", 2), (), ("a = c",), CYCLIC)
    with pytest.raises(ValueError):
        apply_perturbation(b3, bad)


def test_corpus_rules():
    rule = local_rule("G3", "A2", "A1")
    assert rule.relators == ("alpha = beta",)
    e6 = local_rule("G0", "E6", "A5")
    assert e6.relators == ("s1 = s3",)
    with pytest.raises(ValueError):
        local_rule("G0", "A2", "A1")
    assert set(outer_rules()) >= {"2e6+2a2+a3:A3->2A1", "3e6+a1:A1->empty"}


def test_quadruple_point_to_single_node_gives_torus_type():
    source, rule = outer_rules()["2e6+2a2+a3:A3->A1"]
    q = apply_perturbation(corpus_presentation(source), rule)
    # B3 with (a b^2)^2, which is the square of the full twist
    assert q.rank == 2
    assert invariant_suite(q) == invariant_suite(corpus.group("B3"))
