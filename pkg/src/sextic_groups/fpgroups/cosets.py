"""Coset enumeration (Hasse-Lookahead-Todd-Coxeter with lookahead)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..algebra.words import Word, free_reduce
from .presentation import Presentation

DEFAULT_CAP = 1_000_000


class CosetCapExceeded(RuntimeError):
    """Raised when the enumeration needs more live cosets than allowed; the
    index is then either larger than the cap or infinite."""


def _col(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


@dataclass(frozen=True)
class CosetTable:
    """Complete coset table. ``table[c][2*(g-1)]`` is ``c . g`` and
    ``table[c][2*(g-1)+1]`` is ``c . g^-1`` (cosets numbered from 0, the
    subgroup itself being coset 0)."""

    rank: int
    table: tuple
    subgroup: tuple = ()

    @property
    def index(self) -> int:
        return len(self.table)

    def act(self, coset: int, word: Sequence[int]) -> int:
        for x in word:
            coset = self.table[coset][_col(x)]
        return coset

    def permutation(self, gen: int) -> tuple:
        """Right action of generator ``gen`` (may be negative) on cosets."""
        c = _col(gen)
        return tuple(row[c] for row in self.table)

    def is_closed(self, relators: Sequence[Word]) -> bool:
        for c in range(self.index):
            for r in relators:
                if self.act(c, r) != c:
                    return False
        return all(x >= 0 for row in self.table for x in row)


class _Enumerator:
    def __init__(self, rank: int, relators, subgroup, cap: int):
        self.ncols = 2 * rank
        self.inv = [c ^ 1 for c in range(self.ncols)]
        rels = [free_reduce(r) for r in relators if free_reduce(r)]
        self.rels = [[_col(x) for x in r] for r in rels]
        self.subgroup = [[_col(x) for x in free_reduce(w)] for w in subgroup if free_reduce(w)]
        self.cap = cap
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1

    # union-find
    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(self, c: int, x: int) -> int:
        if self.live >= self.cap:
            raise _Full
        n = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(n)
        self.table[c][x] = n
        self.table[n][self.inv[x]] = c
        self.live += 1
        return n

    def _merge(self, k: int, l: int, queue: list) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)
        self.live -= 1

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        table, inv = self.table, self.inv
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = table[e]
            for x in range(self.ncols):
                f = row[x]
                if f < 0:
                    continue
                ix = inv[x]
                if table[f][ix] == e:
                    table[f][ix] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if table[e1][x] >= 0:
                    self._merge(f1, table[e1][x], queue)
                elif table[f1][ix] >= 0:
                    self._merge(e1, table[f1][ix], queue)
                else:
                    table[e1][x] = f1
                    table[f1][ix] = e1

    def scan(self, c: int, word: list[int], fill: bool) -> None:
        table, inv = self.table, self.inv
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j:
                nxt = table[f][word[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = table[b][inv[word[j]]]
                if nxt < 0:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][inv[word[i]]] = f
                return
            if not fill:
                return
            self.define(f, word[i])

    def lookahead(self) -> None:
        for c in range(len(self.table)):
            if self.parent[c] != c:
                continue
            for r in self.rels:
                self.scan(c, r, fill=False)
                if self.parent[c] != c:
                    break

    def run(self) -> None:
        for w in self.subgroup:
            self._with_room(lambda: self.scan(0, w, fill=True))
        c = 0
        while c < len(self.table):
            if self.parent[c] == c:
                self._with_room(lambda: self._process(c))
            c += 1

    def _process(self, c: int) -> None:
        for r in self.rels:
            self.scan(c, r, fill=True)
            if self.parent[c] != c:
                return
        row = self.table[c]
        for x in range(self.ncols):
            if row[x] < 0:
                self.define(c, x)

    def _with_room(self, action) -> None:
        while True:
            try:
                action()
                return
            except _Full:
                before = self.live
                self.lookahead()
                if self.live >= before or self.live >= self.cap:
                    raise CosetCapExceeded(
                        f"coset enumeration exceeded {self.cap} cosets"
                    ) from None

    def compact(self) -> tuple:
        alive = [c for c in range(len(self.table)) if self.parent[c] == c]
        # renumber in first-appearance order from coset 0 (standardised)
        order, seen = [], {0: 0}
        order.append(0)
        k = 0
        while k < len(order):
            c = order[k]
            k += 1
            for x in range(self.ncols):
                d = self.rep(self.table[c][x])
                if d not in seen:
                    seen[d] = len(order)
                    order.append(d)
        if len(order) != len(alive):
            raise RuntimeError("coset table is not connected")
        return tuple(
            tuple(seen[self.rep(self.table[c][x])] for x in range(self.ncols)) for c in order
        )


class _Full(Exception):
    pass


def todd_coxeter(p: Presentation, subgroup: Sequence[Sequence[int]] = (), cap: int = DEFAULT_CAP) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup`` words."""
    if cap < 1:
        raise ValueError("coset cap must be at least 1")
    e = _Enumerator(p.rank, p.relators, subgroup, cap)
    e.run()
    return CosetTable(p.rank, e.compact(), tuple(tuple(w) for w in subgroup))


def group_order(p: Presentation, cap: int = DEFAULT_CAP) -> int | None:
    """Order of the group, or ``None`` when the enumeration exceeds ``cap``."""
    try:
        return todd_coxeter(p, (), cap).index
    except CosetCapExceeded:
        return None
