import shutil
from importlib import resources

import pytest

from sextic_groups.fpgroups import abelianization, corpus, double_cover, invariant_suite


@pytest.mark.parametrize("name", sorted(corpus.GROUPS))
def test_groups_load(name):
    p = corpus.group(name)
    assert p.rank >= 2 and p.relators


@pytest.mark.parametrize("family", sorted(corpus.FAMILIES))
def test_family_files_consistent(family):
    orb = corpus.orbifold_relations(family)
    assert "delta" in orb.generators
    assert orb.notes[-1] and "infinity" in orb.notes[-1]
    system = corpus.rewritten_system(family)
    assert len(system.relators) == 2 * len(corpus.rewritten_system(family, closed=False).relators)
    assert corpus.reference_group(family) in corpus.GROUPS


@pytest.mark.parametrize("family", sorted(corpus.FAMILIES))
def test_double_cover_abelianization_matches_reference(family):
    cover = double_cover(corpus.orbifold_relations(family), "delta")
    ref = corpus.group(corpus.reference_group(family))
    assert str(abelianization(cover)) == str(abelianization(ref)) == "Z6"


def test_reference_invariants_of_b3():
    suite = invariant_suite(corpus.group("B3"))
    assert suite.mod_squares == 6 and suite.alexander == "t^2 - t + 1"


def test_unknown_names():
    with pytest.raises(KeyError):
        corpus.group("G9")
    with pytest.raises(KeyError):
        corpus.orbifold_relations("nope")


def test_data_dir_override(tmp_path):
    src = resources.files("sextic_groups.fpgroups").joinpath("data")
    for f in corpus.GROUPS.values():
        shutil.copy(src.joinpath(f), tmp_path / f)
    (tmp_path / "b3.txt").write_text("gens: a, b; rels: a b = b a;")
    try:
        corpus.use_data_dir(tmp_path)
        assert str(abelianization(corpus.group("B3"))) == "Z x Z"
    finally:
        corpus.use_data_dir(None)
    assert str(abelianization(corpus.group("B3"))) == "Z6"
