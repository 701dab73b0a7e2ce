import pytest

from sextic_groups.singularities import Singularity, SingularitySet


def test_parse_and_print():
    s = SingularitySet.parse("(2E6+2A2)+A3")
    assert str(s) == "(2E6+2A2)+A3"
    assert s.milnor == 19
    assert len(s.inner) == 4 and s.outer == (Singularity("A", 3),)


def test_no_parentheses_means_outer():
    s = SingularitySet.parse("A1+A2")
    assert not s.inner and str(s) == "A2+A1"


def test_empty_and_ordering():
    assert str(SingularitySet()) == "∅"
    assert SingularitySet.of(["A1", "E6"]) == SingularitySet.of(["E6", "A1"])


@pytest.mark.parametrize("bad", ["E5", "D3", "X1", "A0"])
def test_invalid_types(bad):
    with pytest.raises(ValueError):
        Singularity.parse(bad)
