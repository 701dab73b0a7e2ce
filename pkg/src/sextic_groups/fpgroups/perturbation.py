"""Perturbations of simple singular points: local tables, rewriting rules
for the corpus groups, and one-step enumeration of perturbed sets."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from ..singularities import Singularity, SingularitySet, parse_sum
from . import corpus
from .presentation import Presentation, parse_word
from .tietze import tietze_simplify

BRAID_B4 = "braid-B4"
BRAID_B3 = "braid-B3"
ABELIAN = "abelian ZxZ"
CYCLIC = "cyclic Z"


class UnsupportedSingularity(ValueError):
    pass


def _s(*names: str) -> tuple:
    return tuple(Singularity.parse(n) for n in names)


# local perturbations of an E6 point with the local fundamental group
E6_TABLE = (
    (_s("A2", "A2", "A1"), BRAID_B4),
    (_s("A5"), BRAID_B3),
    (_s("A2", "A2"), BRAID_B3),
    (_s("D5"), CYCLIC),
    (_s("D4"), CYCLIC),
    (_s("A4", "A1"), CYCLIC),
    (_s("A4"), CYCLIC),
    (_s("A3", "A1"), CYCLIC),
    (_s("A3"), CYCLIC),
    (_s("A2", "A1", "A1"), CYCLIC),
    (_s("A2", "A1"), CYCLIC),
    (_s("A2"), CYCLIC),
    (_s("A1", "A1", "A1"), CYCLIC),
    (_s("A1", "A1"), CYCLIC),
    (_s("A1"), CYCLIC),
    ((), CYCLIC),
)


def _partitions(total: int, smallest: int) -> Iterable[tuple]:
    """Multisets of parts >= ``smallest`` with sum <= ``total``, non-increasing."""
    yield ()
    for first in range(smallest, total + 1):
        for rest in _partitions(total - first, smallest):
            if all(x <= first for x in rest):
                yield (first,) + rest


def a_perturbations(p: int) -> list[tuple]:
    """Sets ``+A_{p_i}`` with ``sum(p_i + 1) <= p + 1``, excluding ``A_p`` itself."""
    out = []
    for parts in sorted(_partitions(p + 1, 2), key=lambda t: (-sum(t), t)):
        s = tuple(Singularity("A", q - 1) for q in parts)
        if s != (Singularity("A", p),):
            out.append(s)
    return out


def a_twist_exponent(p: int, result: Sequence[Singularity]) -> int:
    """Exponent ``s`` with local group ``<a, b | sigma^s a = a, sigma^s b = b>``."""
    d = (p + 1) - sum(x.index + 1 for x in result)
    if d < 0:
        raise ValueError(f"{result} is not a perturbation of A{p}")
    if d > 0:
        return 1
    g = 0
    for x in result:
        g = gcd(g, x.index + 1)
    return g


def _class_of_exponent(s: int) -> str:
    return {1: CYCLIC, 2: ABELIAN, 3: BRAID_B3}.get(s, f"torus-link T(2,{s})")


def local_perturbations(point: Singularity | str) -> list[tuple]:
    """One-step local perturbations of ``point`` as ``(result set, local group class)``."""
    point = Singularity.parse(point) if isinstance(point, str) else point
    if point.kind == "E" and point.index == 6:
        return list(E6_TABLE)
    if point.kind == "A":
        return [(r, _class_of_exponent(a_twist_exponent(point.index, r))) for r in a_perturbations(point.index)]
    raise UnsupportedSingularity(f"perturbations of {point} are not tabulated")


def local_group_class(point: Singularity | str, result: Sequence) -> str:
    result = tuple(sorted((Singularity.parse(x) if isinstance(x, str) else x for x in result), reverse=True))
    for r, cls in local_perturbations(point):
        if tuple(sorted(r, reverse=True)) == result:
            return cls
    raise ValueError(f"{'+'.join(map(str, result)) or 'empty'} is not a perturbation of {point}")


def enumerate_perturbations(s: SingularitySet, strict: bool = True) -> list[SingularitySet]:
    """All sets reachable by perturbing exactly one point of ``s``.

    D-type points are not expanded: ``strict`` raises, otherwise they are kept."""
    out: list[SingularitySet] = []
    seen = set()
    for part in ("inner", "outer"):
        points = getattr(s, part)
        for point in dict.fromkeys(points):
            try:
                options = local_perturbations(point)
            except UnsupportedSingularity:
                if strict:
                    raise
                continue
            rest = list(points)
            rest.remove(point)
            for result, _ in options:
                new = tuple(rest) + tuple(result)
                t = SingularitySet(new, s.outer) if part == "inner" else SingularitySet(s.inner, new)
                key = (t.inner, t.outer)
                if key not in seen:
                    seen.add(key)
                    out.append(t)
    return out


# rewriting rules

@dataclass(frozen=True)
class PerturbationRule:
    """Extra relators induced on a global group by perturbing one point."""

    position: str
    point: Singularity
    result: tuple
    relators: tuple  # relation texts over the presentation's generators
    local_class: str

    def __post_init__(self):
        expected = local_group_class(self.point, self.result)
        if expected != self.local_class:
            raise ValueError(f"local group of {self.point} -> {self.result} is {expected}, not {self.local_class}")


def apply_perturbation(p: Presentation, rule: PerturbationRule, simplify: bool = True) -> Presentation:
    """Adjoin the rule's relators; every name must be a generator of ``p``."""
    try:
        extra = [parse_word(r, p.generators) for r in rule.relators]
    except ValueError as e:
        raise ValueError(f"rule {rule.position}: {e}") from None
    q = p.with_relators(extra, [f"perturbation {rule.position}"] * len(extra))
    return tietze_simplify(q) if simplify else q


# local meridians of the corpus groups, as words in their generators
_AB = "(alpha beta)"
_ALPHABAR = f"{_AB}^-1 beta {_AB}"
_BETABAR = f"{_AB} alpha {_AB}^-1"

LOCAL_MERIDIANS = {
    # E6 over the cusp of 3e6+a1 with local B4 generators sigma_1..sigma_3
    ("G0", "E6"): ("s1", "s2", "s3"),
    ("B3", "E6"): ("s1", "s2", "s1"),
    # E6 at infinity: the basis of a fiber far to the left
    ("G3", "E6"): ("betabar", "beta^-1 alpha beta", "betabar beta betabar^-1"),
    ("G2.1", "E6"): ("beta", f"({_BETABAR})^-1 ({_ALPHABAR}) ({_BETABAR})", f"beta ({_BETABAR}) beta^-1"),
    ("G2.2", "E6"): (f"{_BETABAR}", f"({_BETABAR})^-1 ({_ALPHABAR}) ({_BETABAR})", "gamma"),
    ("G3", "A2"): ("alpha", "beta"),
    ("G2.1", "A5"): ("alpha", "beta"),
    ("G2.2", "A5"): ("alpha", "beta"),
}


def _equal_all(words: Sequence[str]) -> tuple:
    return tuple(f"{words[0]} = {w}" for w in words[1:])


def local_rule(group: str, point: str, result: Sequence[str] | str) -> PerturbationRule:
    """Rule for perturbing ``point`` of a corpus group to ``result``."""
    sing = Singularity.parse(point)
    res = parse_sum(result) if isinstance(result, str) else tuple(Singularity.parse(x) for x in result)
    try:
        m = LOCAL_MERIDIANS[(group, str(sing))]
    except KeyError:
        raise ValueError(f"no local meridians recorded for {sing} in {group}") from None
    cls = local_group_class(sing, res)
    if sing == Singularity("E", 6):
        if cls == CYCLIC:
            rels = _equal_all(m)
        elif cls == BRAID_B3:
            # the epimorphism B4 -> B3 identifies the outer generators
            rels = (f"{m[0]} = {m[2]}",)
        else:
            rels = ()
    else:
        s = a_twist_exponent(sing.index, res)
        rels = (torus_link_relation(m[0], m[1], s),)
    return PerturbationRule(f"{group}:{sing}->{'+'.join(map(str, res)) or 'empty'}", sing, res, rels, cls)


def _paren(w: str) -> str:
    return f"({w})" if " " in w.strip() else w.strip()


def torus_link_relation(a: str, b: str, s: int) -> str:
    """Relation of ``sigma^s`` fixing ``a`` and ``b`` in the free group ``<a, b>``."""
    a, b = _paren(a), _paren(b)
    k = s // 2
    ab = "" if k == 0 else (f"{a} {b}" if k == 1 else f"({a} {b})^{k}")
    ba = "" if k == 0 else (f"{b} {a}" if k == 1 else f"({b} {a})^{k}")
    if s % 2 == 0:
        return f"{ab} = {ba}"
    return " ".join(filter(None, (ab, a))) + " = " + " ".join(filter(None, (ba, b)))


# the global rewriting scenarios for non-local perturbations of outer points
def outer_rules() -> dict:
    """Named rules: tangencies and the quadruple point perturbed away."""
    return {
        "3e6+a1:A1->empty": (
            "system:3e6+a1",
            PerturbationRule("tangency x=2", Singularity("A", 1), (), ("betabar = beta",), CYCLIC),
        ),
        "2e6+2a2+a3:A3->2A1": (
            "G3",
            PerturbationRule("quadruple point", Singularity("A", 3), _s("A1", "A1"), ("[beta ; betabar]",), ABELIAN),
        ),
        "2e6+2a2+a3:A3->A1": (
            "G3",
            PerturbationRule("quadruple point", Singularity("A", 3), _s("A1"), ("betabar = beta",), CYCLIC),
        ),
        "2e6+a5+a2.1:A2->A1": (
            "G2.1",
            PerturbationRule("inflection tangency", Singularity("A", 2), _s("A1"), (f"{_BETABAR} = beta",), CYCLIC),
        ),
    }


def corpus_presentation(source: str) -> Presentation:
    if source.startswith("system:"):
        return corpus.rewritten_system(source.partition(":")[2])
    return corpus.group(source)
