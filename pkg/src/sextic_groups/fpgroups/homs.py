"""Finite groups as multiplication tables and homomorphism counting."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Hashable, Iterable, Sequence

from .cosets import todd_coxeter
from .presentation import Presentation
from .schreier import coset_representatives


class HomBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """Group on ``0..n-1`` with ``table[i][j] = i*j`` and identity ``0``."""

    name: str
    table: tuple
    elements: tuple = ()

    def __post_init__(self):
        n = len(self.table)
        if any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be square")
        if list(self.table[0]) != list(range(n)) or [row[0] for row in self.table] != list(range(n)):
            raise ValueError("element 0 must be the identity")
        if not self.elements:
            object.__setattr__(self, "elements", tuple(f"g{i}" for i in range(n)))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def inverses(self) -> tuple:
        return _inverses(self.table)

    def element_order(self, g: int) -> int:
        n, x = 1, g
        while x:
            x = self.table[x][g]
            n += 1
        return n

    def order_statistics(self) -> tuple:
        counts: dict[int, int] = {}
        for g in range(self.order):
            k = self.element_order(g)
            counts[k] = counts.get(k, 0) + 1
        return tuple(sorted(counts.items()))

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def center_order(self) -> int:
        t = self.table
        return sum(1 for a in range(self.order) if all(t[a][b] == t[b][a] for b in range(self.order)))

    def generated(self, gens: Iterable[int]) -> frozenset:
        seen = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def derived_subgroup(self) -> frozenset:
        inv = self.inverses
        t = self.table
        comms = {t[t[a][b]][t[inv[a]][inv[b]]] for a in range(self.order) for b in range(self.order)}
        return self.generated(comms)

    def derived_order(self) -> int:
        return len(self.derived_subgroup())

    def abelianization_statistics(self) -> tuple:
        """Element-order statistics of ``G/G'`` (counted per coset)."""
        d = self.derived_subgroup()
        counts: dict[int, int] = {}
        for g in range(self.order):
            k, x = 1, g
            while x not in d:
                x = self.table[x][g]
                k += 1
            counts[k] = counts.get(k, 0) + 1
        return tuple(sorted((k, v // len(d)) for k, v in counts.items()))

    def evaluate(self, word: Sequence[int], images: Sequence[int]) -> int:
        inv = self.inverses
        x = 0
        for letter in word:
            g = images[abs(letter) - 1]
            x = self.table[x][g if letter > 0 else inv[g]]
        return x

    def to_text(self) -> str:
        lines = [f"group: {self.name}", "elements: " + ", ".join(self.elements)]
        for row in self.table:
            lines.append(" ".join(self.elements[j] for j in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "FiniteGroup":
        """Read ``group:``/``elements:`` headers then one table row per line."""
        name, elements, rows = "G", None, []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("group:"):
                name = line.partition(":")[2].strip()
            elif line.startswith("elements:"):
                elements = tuple(e.strip() for e in line.partition(":")[2].split(","))
            else:
                rows.append(line.split())
        if elements is None:
            raise ValueError("missing 'elements:' line")
        index = {e: i for i, e in enumerate(elements)}
        table = tuple(tuple(index[x] for x in row) for row in rows)
        return cls(name, table, elements)

    @classmethod
    def load(cls, path: str | Path) -> "FiniteGroup":
        return cls.parse(Path(path).read_text())

    @classmethod
    def from_generators(cls, name: str, gens: Sequence[Hashable], mul: Callable, identity: Hashable) -> "FiniteGroup":
        """Close ``gens`` under ``mul`` (elements must be hashable)."""
        elems = [identity]
        index = {identity: 0}
        k = 0
        while k < len(elems):
            x = elems[k]
            k += 1
            for g in gens:
                y = mul(x, g)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
        table = tuple(tuple(index[mul(a, b)] for b in elems) for a in elems)
        # labels must survive the text format, so no raw reprs
        return cls(name, table, ("1",) + tuple(f"g{k}" for k in range(1, len(elems))))

    @classmethod
    def from_presentation(cls, name: str, p: Presentation, cap: int = 100_000) -> "FiniteGroup":
        """Regular representation from a coset table of the trivial subgroup."""
        t = todd_coxeter(p, (), cap)
        reps = coset_representatives(t)
        n = t.index
        table = tuple(tuple(t.act(a, reps[b]) for b in range(n)) for a in range(n))
        return cls(name, table, tuple(p.format(w) or "1" for w in reps))


@lru_cache(maxsize=256)
def _inverses(table: tuple) -> tuple:
    n = len(table)
    return tuple(next(b for b in range(n) if table[a][b] == 0) for a in range(n))


# counting

def _schedule(p: Presentation) -> list[list]:
    """Relators grouped by the generator after whose assignment they can be checked."""
    buckets: list[list] = [[] for _ in range(p.rank)]
    for r in p.relators:
        if r:
            buckets[max(abs(x) for x in r) - 1].append(r)
    return buckets


def hom_count(p: Presentation, target: FiniteGroup, budget: int = 50_000_000) -> tuple[int, int]:
    """Number of homomorphisms ``p -> target`` and how many are onto."""
    if target.order ** p.rank > budget:
        raise HomBudgetExceeded(f"{target.order}^{p.rank} image tuples exceed the budget {budget}")
    buckets = _schedule(p)
    images = [0] * p.rank
    homs = epis = 0
    n = target.order

    def extend(i: int) -> None:
        nonlocal homs, epis
        if i == p.rank:
            homs += 1
            if len(target.generated(images)) == n:
                epis += 1
            return
        for g in range(n):
            images[i] = g
            if all(target.evaluate(r, images) == 0 for r in buckets[i]):
                extend(i + 1)
        images[i] = 0

    extend(0)
    return homs, epis


@dataclass(frozen=True)
class HomFingerprint:
    entries: tuple  # (group id, homs, epis)

    def as_dict(self) -> dict:
        return {name: {"homs": h, "epis": e} for name, h, e in self.entries}

    def differences(self, other: "HomFingerprint") -> list:
        a = {e[0]: e[1:] for e in self.entries}
        b = {e[0]: e[1:] for e in other.entries}
        return [(k, a.get(k), b.get(k)) for k in sorted(set(a) | set(b)) if a.get(k) != b.get(k)]


def fingerprint(p: Presentation, targets: Iterable[FiniteGroup] | None = None) -> HomFingerprint:
    targets = catalogue() if targets is None else targets
    return HomFingerprint(tuple((g.name, *hom_count(p, g)) for g in targets))


# catalogue of the groups of order <= 24

def _abelian_factorizations(n: int) -> list[tuple]:
    """Invariant factor lists (each dividing the next) with product ``n``."""
    out = []

    def rec(rest: int, prev: int, acc: tuple):
        if rest == 1:
            out.append(acc)
            return
        for d in range(2, rest + 1):
            if rest % d == 0 and (prev == 0 or d % prev == 0):
                rec(rest // d, d, acc + (d,))

    rec(n, 0, ())
    # keep chains with d_i | d_{i+1}; rec builds them increasing
    return [f for f in out if all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))]


def _abelian_presentation(factors: tuple) -> str:
    gens = [f"x{i}" for i in range(len(factors))]
    rels = [f"x{i}^{d}" for i, d in enumerate(factors)]
    rels += [f"[x{i} ; x{j}]" for i in range(len(gens)) for j in range(i + 1, len(gens))]
    return f"gens: {', '.join(gens) or 'x'}; rels: {', '.join(rels) or 'x'};"


def _dihedral(n: int) -> str:
    return f"gens: a, b; rels: a^{n // 2}, b^2, (a b)^2;"


def _dicyclic(n: int) -> str:
    m = n // 2
    return f"gens: a, b; rels: a^{m}, a^{m // 2} = b^2, b^-1 a b = a^-1;"


_NONABELIAN = {
    "S3": _dihedral(6),
    "D8": _dihedral(8),
    "Q8": _dicyclic(8),
    "D10": _dihedral(10),
    "D12": _dihedral(12),
    "Dic12": _dicyclic(12),
    "A4": "gens: a, b; rels: a^2, b^3, (a b)^3;",
    "D14": _dihedral(14),
    "D16": _dihedral(16),
    "Q16": _dicyclic(16),
    "SD16": "gens: a, b; rels: a^8, b^2, b a b = a^3;",
    "M16": "gens: a, b; rels: a^8, b^2, b a b = a^5;",
    "C4:C4": "gens: a, b; rels: a^4, b^4, b^-1 a b = a^-1;",
    "C2xD8": "gens: a, b, c; rels: a^4, b^2, (a b)^2, c^2, [a ; c], [b ; c];",
    "C2xQ8": "gens: a, b, c; rels: a^4, a^2 = b^2, b^-1 a b = a^-1, c^2, [a ; c], [b ; c];",
    "C4oD8": "gens: a, b, c; rels: a^4, b^2, (a b)^2, c^4, c^2 = a^2, [a ; c], [b ; c];",
    "C2^2:C4": "gens: a, b, c; rels: a^2, b^2, c^4, [a ; b], c^-1 a c = b, c^-1 b c = a;",
    "D18": _dihedral(18),
    "C3xS3": "gens: a, b, c; rels: a^3, b^2, (a b)^2, c^3, [a ; c], [b ; c];",
    "C3^2:C2": "gens: a, b, c; rels: a^3, b^3, [a ; b], c^2, c a c = a^-1, c b c = b^-1;",
    "D20": _dihedral(20),
    "Dic20": _dicyclic(20),
    "F20": "gens: a, b; rels: a^5, b^4, b^-1 a b = a^2;",
    "C7:C3": "gens: a, b; rels: a^7, b^3, b^-1 a b = a^2;",
    "D22": _dihedral(22),
    "C3:C8": "gens: a, b; rels: a^3, b^8, b^-1 a b = a^-1;",
    "SL(2,3)": "gens: s, t; rels: (s t)^2 = s^3, s^3 = t^3;",
    "Dic24": _dicyclic(24),
    "C4xS3": "gens: a, b, c; rels: a^3, b^2, (a b)^2, c^4, [a ; c], [b ; c];",
    "D24": _dihedral(24),
    "C2xDic12": "gens: a, b, c; rels: a^6, a^3 = b^2, b^-1 a b = a^-1, c^2, [a ; c], [b ; c];",
    "C3:D8": "gens: x, y, c; rels: x^4, y^2, (x y)^2, c^3, x^-1 c x = c^-1, [y ; c];",
    "C3xD8": "gens: a, b, c; rels: a^4, b^2, (a b)^2, c^3, [a ; c], [b ; c];",
    "C3xQ8": "gens: a, b, c; rels: a^4, a^2 = b^2, b^-1 a b = a^-1, c^3, [a ; c], [b ; c];",
    "S4": "gens: a, b; rels: a^2, b^3, (a b)^4;",
    "C2xA4": "gens: a, b, c; rels: a^2, b^3, (a b)^3, c^2, [a ; c], [b ; c];",
    "C2^2xS3": "gens: a, b, c, d; rels: a^3, b^2, (a b)^2, c^2, d^2, [c ; d], [a ; c], [b ; c], [a ; d], [b ; d];",
}


def _abelian_name(factors: tuple) -> str:
    if not factors:
        return "C1"
    return "x".join(f"C{d}" for d in factors)


@lru_cache(maxsize=None)
def catalogue(max_order: int = 24) -> tuple:
    """Every group of order <= ``max_order`` (up to 24), sorted by order."""
    if max_order > 24:
        raise ValueError("catalogue covers orders up to 24")
    groups = []
    for n in range(1, max_order + 1):
        for f in _abelian_factorizations(n) if n > 1 else [()]:
            groups.append(FiniteGroup.from_presentation(_abelian_name(f), Presentation.parse(_abelian_presentation(f))))
    for name, text in _NONABELIAN.items():
        g = FiniteGroup.from_presentation(name, Presentation.parse(text))
        if g.order <= max_order:
            groups.append(g)
    groups.sort(key=lambda g: g.order)
    return tuple(groups)


def invariant_key(g: FiniteGroup) -> tuple:
    """Cheap isomorphism invariants, enough to separate the catalogue."""
    return (g.order, g.order_statistics(), g.center_order(), g.abelianization_statistics())


def _mat_mul_mod3(a: tuple, b: tuple) -> tuple:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) % 3 for j in range(2)) for i in range(2)
    )


def gl23() -> FiniteGroup:
    """GL(2,3) from two generating matrices over F_3."""
    gens = (((1, 1), (0, 1)), ((0, 1), (2, 0)), ((2, 0), (0, 1)))
    return FiniteGroup.from_generators("GL(2,3)", gens, _mat_mul_mod3, ((1, 0), (0, 1)))


def sl23() -> FiniteGroup:
    gens = (((1, 1), (0, 1)), ((0, 1), (2, 0)))
    return FiniteGroup.from_generators("SL(2,3)", gens, _mat_mul_mod3, ((1, 0), (0, 1)))


def symmetric_group(n: int) -> FiniteGroup:
    def compose(p, q):  # apply p then q
        return tuple(q[p[i]] for i in range(n))

    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return FiniteGroup.from_generators(f"S{n}", gens, compose, tuple(range(n)))
