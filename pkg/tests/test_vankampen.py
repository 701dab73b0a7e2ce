import pytest

from sextic_groups.braids import Braid
from sextic_groups.fpgroups import Presentation, abelianization, braid_relators, group_order, power_quotient, vankampen


def test_braid_relators_of_generator():
    assert braid_relators(Braid(2, (1,))) == [(2, -1), (-2, 1)]
    assert braid_relators(Braid.identity(3)) == []


def test_cusp_gives_braid_relation():
    p = vankampen([(0, Braid(2, (1, 1, 1)))], k=6, names=["a", "b"])
    q = Presentation(p.generators, p.relators[:-1])
    assert str(abelianization(q)) == "Z"
    assert power_quotient(q, 2).order == 6
    assert p.notes[-1] == "relation at infinity"
    assert p.notes[0] == "fiber x=0"


def test_node_plus_infinity_relation():
    # a node identifies nothing but commutes the meridians
    p = vankampen([(0, Braid(2, (1, 1)))], k=3)
    assert p.generators == ("z1", "z2")
    assert str(abelianization(p)) == "Z3 x Z"


def test_vertical_tangency_collapses():
    # z1 = z2, then (z1 z2)^2 = z1^4
    p = vankampen([(0, Braid(2, (1,)))], k=2)
    assert group_order(p) == 4


def test_errors():
    with pytest.raises(ValueError):
        vankampen([(0, Braid(2, (1,)))], k=0)
    with pytest.raises(ValueError):
        vankampen([(0, Braid(2, (1,))), (1, Braid(3, (1,)))], k=1)
    with pytest.raises(ValueError):
        braid_relators(Braid(3, (1,)), d=4)
