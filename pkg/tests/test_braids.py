import pytest
import sympy
from hypothesis import given, strategies as st

from sextic_groups.algebra.words import free_reduce, multiply
from sextic_groups.braids import (
    Braid,
    FreeGroupAutomorphism,
    artin_act,
    braid_equal,
    braid_product,
    cycle_notation,
    permutation_of,
    rho,
)

t = sympy.Symbol("t")


def burau(b: Braid):
    """Unreduced Burau matrix, an independent faithful-enough check for n <= 3."""
    n = b.strands
    out = sympy.eye(n)
    for x in b.letters:
        i = abs(x) - 1
        m = sympy.eye(n)
        m[i, i], m[i, i + 1], m[i + 1, i], m[i + 1, i + 1] = 1 - t, t, 1, 0
        out = out * (m if x > 0 else m.inv())
    return out.applyfunc(sympy.simplify)


braids4 = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=8).map(lambda w: Braid(4, tuple(w)))


def test_braid_relations():
    for n in (3, 4, 5):
        for i in range(1, n - 1):
            assert braid_equal(Braid(n, (i, i + 1, i)), Braid(n, (i + 1, i, i + 1)))
        for i in range(1, n):
            for j in range(i + 2, n):
                assert braid_equal(Braid(n, (i, j)), Braid(n, (j, i)))
    assert not braid_equal(Braid(3, (1, 2)), Braid(3, (2, 1)))


@given(braids4)
def test_artin_action_fixes_product(b):
    assert artin_act(b, rho(4)) == rho(4)


@given(braids4, braids4)
def test_action_is_homomorphism(b, c):
    composed = FreeGroupAutomorphism.of_braid(b).then(FreeGroupAutomorphism.of_braid(c))
    assert composed == FreeGroupAutomorphism.of_braid(b * c)


@given(braids4)
def test_inverse(b):
    assert braid_equal(b * b.inverse(), Braid.identity(4))


def test_full_twist_is_conjugation_by_rho():
    for n in (2, 3, 4):
        by = FreeGroupAutomorphism.conjugation(n, rho(n))
        assert FreeGroupAutomorphism.of_braid(Braid.full_twist(n)) == by


def test_burau_agrees_on_equal_braids():
    pairs = [((1, 2, 1), (2, 1, 2)), ((1, 2) * 3, (2, 1) * 3), ((1, 1, 2, -1), (-2, 1, 1, 2))]
    for u, v in pairs:
        equal = braid_equal(Braid(3, u), Braid(3, v))
        assert equal == (burau(Braid(3, u)) == burau(Braid(3, v)))


def test_permutation_and_cycles():
    b = Braid.parse("B3: s1 s2")
    assert permutation_of(b) == (2, 0, 1)
    assert cycle_notation(permutation_of(b)) == "(1 3 2)"
    assert cycle_notation(permutation_of(Braid.identity(3))) == "()"


@given(braids4, braids4)
def test_permutation_is_homomorphism(b, c):
    p, q = permutation_of(b), permutation_of(c)
    assert permutation_of(b * c) == tuple(q[p[i]] for i in range(4))


def test_parse_format_roundtrip_and_errors():
    b = Braid.parse("B4: s1 s3^-1 s2")
    assert Braid.parse(str(b)) == b
    with pytest.raises(ValueError):
        Braid(3, (3,))
    with pytest.raises(ValueError):
        Braid.parse("s1 s2")
    with pytest.raises(ValueError):
        braid_product([])
    assert braid_product([Braid(3, (1,)), Braid(3, (-1, 2))]).letters == (2,)


def test_artin_generators():
    s1 = Braid(3, (1,))
    assert artin_act(s1, (1,)) == (1, 2, -1)
    assert artin_act(s1, (2,)) == (1,)
    assert artin_act(s1.inverse(), (1,)) == (2,)
    assert artin_act(s1, (3,)) == (3,)
    assert free_reduce(multiply(artin_act(s1, (1,)), artin_act(s1, (2,)))) == (1, 2)
