import math

import pytest

from sextic_groups.algebra.words import canonical_relator
from sextic_groups.braids import Braid, braid_equal, cycle_notation, permutation_of
from sextic_groups.curves import TrigonalCurve, named_section, singular_fibers
from sextic_groups.fpgroups import Presentation, braid_relators
from sextic_groups.monodromy import (
    FiberConfiguration,
    MonodromyData,
    Path,
    TrackingError,
    YFactor,
    arc,
    basis_names,
    basis_transport,
    big_circle_braid,
    braid_monodromy,
    braid_of_trajectory,
    configuration,
    infinity_check,
    is_rho_conjugation,
    line,
    local_braid,
    track_roots,
)

FAMILIES = ("3e6+a1", "2e6+2a2+a3", "2e6+a5+a2.1", "2e6+a5+a2.2")


def single(coeffs, positions, **kw):
    return FiberConfiguration((YFactor(coeffs),), positions, **kw)


# local models with known monodromy

LOCAL = [
    # y^2 = x: simple vertical tangency
    (((1,), (0,), (0, -1)), (1,), "(1 2)"),
    # y^2 = x^2: node
    (((1,), (0,), (0, 0, -1)), (1, 1), "()"),
    # y^2 = x^3: cusp
    (((1,), (0,), (0, 0, 0, -1)), (1, 1, 1), "(1 2)"),
    # y^3 = x^2: E6-like triple point
    (((1,), (0,), (0,), (0, 0, -1)), (1, 2, 1, 2), "(1 2 3)"),
]


@pytest.mark.parametrize("coeffs, letters, cycles", LOCAL)
def test_local_models(coeffs, letters, cycles):
    c = single(coeffs, [0])
    b = local_braid(c, 0)
    assert braid_equal(b, Braid(len(coeffs) - 1, letters))
    assert cycle_notation(permutation_of(b)) == cycles


def test_constant_and_empty_loops_are_trivial():
    c = single(((1,), (0,), (0, -1)), [0])
    there_and_back = Path((line(1, 1.7), line(1.7, 1)))
    assert braid_of_trajectory(c, track_roots(c, there_and_back), c.base_order()).letters == ()
    # a circle that encloses no fiber
    around = Path((line(1, 2.5), arc(3, 0.5, math.pi, 2 * math.pi), line(2.5, 1)))
    assert braid_of_trajectory(c, track_roots(c, around), c.base_order()).letters == ()


def test_path_through_a_fiber_fails_loudly():
    c = single(((1,), (0,), (0, -1)), [0])
    with pytest.raises(TrackingError):
        track_roots(c, Path((line(-1, 1),)))


def test_generic_infinity_is_rho_conjugation():
    # a conic: the roots at infinity make one full twist
    c = single(((1,), (0,), (1, 0, -1)), [-1, 1], k=1)
    md = braid_monodromy(c)
    check = infinity_check(md, c)
    assert check.conjugation_by_rho and check.matches_boundary
    # y^3 - 3y + x: one third of a twist at infinity
    c = single(((1,), (0,), (-3,), (0, 1)), [-2, 2])
    md = braid_monodromy(c)
    assert braid_equal(md.product(), Braid(3, (1, 2)))
    assert braid_equal(md.product(), big_circle_braid(c))


def test_is_rho_conjugation():
    assert is_rho_conjugation(Braid.full_twist(3), 1) == ()
    assert is_rho_conjugation(Braid(3, (1,)), 1) != ()


def test_configuration_validation():
    with pytest.raises(ValueError):
        single(((1,), (0, -1)), [])
    with pytest.raises(ValueError):
        local_braid(single(((1,), (0,), (0, -1)), [0]), 5.0)


# the four families, computed once

@pytest.fixture(scope="module")
def families():
    out = {}
    for name in FAMILIES:
        c = configuration(name)
        out[name] = (c, braid_monodromy(c))
    return out


@pytest.mark.parametrize("name", FAMILIES)
def test_product_equals_big_circle(families, name):
    c, md = families[name]
    check = infinity_check(md, c)
    assert check.matches_boundary
    # the fiber at infinity is singular here, so the product is not rho^2 conjugation
    assert not check.conjugation_by_rho


@pytest.mark.parametrize("name", FAMILIES)
def test_local_braids_have_positive_degree(families, name):
    c, md = families[name]
    assert [x for x, _ in md.braids] == list(c.positions)
    for _, b in md.braids:
        assert b.strands == 4
        assert sum(1 if x > 0 else -1 for x in b.letters) > 0


@pytest.mark.parametrize("name", FAMILIES)
def test_permutations_match_fiber_kinds(families, name):
    _, md = families[name]
    fibers = singular_fibers(named_section(name), TrigonalCurve())
    assert len(fibers) == len(md.braids)
    for fiber, (x, b) in zip(fibers, md.braids):
        assert fiber.approx == pytest.approx(x)
        cycles = cycle_notation(permutation_of(b))
        if fiber.kind == "intersection":
            assert cycles == "()"
        else:
            # the cusp and the vertical tangency each swap two roots of the cubic
            assert cycles.count(" ") == 1 and cycles.count("(") == 1


def test_names_per_family(families):
    assert families["3e6+a1"][1].names == ("alpha", "delta", "beta", "gamma")
    assert families["2e6+2a2+a3"][1].names == ("delta", "alpha", "beta", "gamma")
    assert families["2e6+a5+a2.1"][1].names == ("alpha", "beta", "delta", "gamma")


def _relator_forms(b, names):
    p = Presentation(names, tuple(braid_relators(b)))
    return p, {canonical_relator(r) for r in p.relators}


def test_tangency_at_two_gives_commuting_squares(families):
    _, md = families["3e6+a1"]
    b = dict(md.braids)[2.0]
    assert braid_equal(b, Braid(4, (2, 2, 2, 2)))
    p, forms = _relator_forms(b, md.names)
    assert forms == {canonical_relator(p.word("(delta beta)^2 = (beta delta)^2"))}


def test_inflection_tangency_gives_cubes(families):
    c, md = families["2e6+a5+a2.2"]
    x = min(p for p in c.positions if 3 < p < 4)
    b = dict(md.braids)[x]
    assert braid_equal(b, Braid(4, (3,) * 6))
    p, forms = _relator_forms(b, md.names)
    assert forms == {canonical_relator(p.word("(gamma delta)^3 = (delta gamma)^3"))}


def test_cusp_braids(families):
    _, md = families["2e6+2a2+a3"]
    assert braid_equal(dict(md.braids)[0.0], Braid(4, (2, 2, 2)))


def test_determinism_across_step_counts():
    a = braid_monodromy(configuration("3e6+a1", initial_steps=32))
    b = braid_monodromy(configuration("3e6+a1", initial_steps=64))
    assert [str(x) for _, x in a.braids] == [str(x) for _, x in b.braids]


def test_detour_radius_does_not_change_braids(families):
    _, md = families["3e6+a1"]
    small = braid_monodromy(configuration("3e6+a1", detour_factor=0.125))
    for (_, u), (_, v) in zip(md.braids, small.braids):
        assert braid_equal(u, v)


def test_json_roundtrip(families):
    _, md = families["2e6+2a2+a3"]
    back = MonodromyData.from_json(md.to_json())
    assert back.names == md.names and back.k == md.k
    assert [(x, str(b)) for x, b in back.braids] == [(x, str(b)) for x, b in md.braids]
    assert braid_equal(back.product(), md.product())


# bases transported to a fiber far to the left

LEFT = {
    "2e6+2a2+a3": {"alpha1": "betabar", "beta1": "beta^-1 alpha beta", "gamma1": "gamma"},
    "2e6+a5+a2.1": {"alpha1": "beta", "beta1": "betabar^-1 alphabar betabar", "gamma1": "gamma"},
    "2e6+a5+a2.2": {"alpha1": "betabar", "beta1": "betabar^-1 alphabar betabar", "gamma1": "gamma"},
}


@pytest.mark.parametrize("name", sorted(LEFT))
def test_basis_far_left(families, name):
    c, _ = families[name]
    got = basis_transport(c, min(c.positions) - 5)
    assert {k: got[k] for k in LEFT[name]} == LEFT[name]


def test_basis_at_base_is_identity(families):
    c, _ = families["3e6+a1"]
    got = basis_transport(c, c.base)
    assert got == {n + "1": n for n in basis_names(c)}
    with pytest.raises(ValueError):
        basis_transport(c, 2.0)
