"""Reidemeister-Schreier rewriting and the index-two transform for a double
covering branched along one generator."""

from __future__ import annotations

from collections import deque

from ..algebra.words import Word, free_reduce
from .cosets import CosetTable, _col
from .presentation import Presentation


def spanning_tree(t: CosetTable) -> dict[int, tuple[int, int]]:
    """``tree[c] = (parent, signed generator)`` for a BFS tree rooted at coset 0."""
    tree: dict[int, tuple[int, int]] = {}
    seen = {0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in range(1, t.rank + 1):
            for x in (g, -g):
                d = t.table[c][_col(x)]
                if d not in seen:
                    seen.add(d)
                    tree[d] = (c, x)
                    queue.append(d)
    return tree


def coset_representatives(t: CosetTable) -> list[Word]:
    tree = spanning_tree(t)
    reps: list[Word] = [()] * t.index
    order = sorted(tree, key=lambda c: _depth(tree, c))
    for c in order:
        parent, x = tree[c]
        reps[c] = reps[parent] + (x,)
    return reps


def _depth(tree, c):
    n = 0
    while c in tree:
        c = tree[c][0]
        n += 1
    return n


def reidemeister_schreier(p: Presentation, t: CosetTable) -> Presentation:
    """Presentation of the subgroup whose complete coset table is ``t``.

    Schreier generators are named ``g_c`` for the non-tree edge leaving coset
    ``c`` along generator ``g``; each relator is rewritten at every coset."""
    if any(x < 0 for row in t.table for x in row):
        raise ValueError("coset table is incomplete")
    if t.rank != p.rank:
        raise ValueError("table and presentation have different ranks")
    tree = spanning_tree(t)
    tree_edges = set()
    for d, (c, x) in tree.items():
        if x > 0:
            tree_edges.add((c, x))
        else:
            tree_edges.add((d, -x))
    index: dict[tuple[int, int], int] = {}
    names = []
    for c in range(t.index):
        for g in range(1, p.rank + 1):
            if (c, g) not in tree_edges:
                index[(c, g)] = len(names) + 1
                names.append(f"{p.generators[g - 1]}_{c}")

    def rewrite(word: Word, c: int) -> Word:
        out = []
        for x in word:
            if x > 0:
                k = index.get((c, x))
                if k:
                    out.append(k)
                c = t.table[c][_col(x)]
            else:
                d = t.table[c][_col(x)]
                k = index.get((d, -x))
                if k:
                    out.append(-k)
                c = d
        return free_reduce(out)

    rels = []
    notes = []
    for c in range(t.index):
        for j, r in enumerate(p.relators):
            w = rewrite(r, c)
            if w:
                rels.append(w)
                notes.append(f"relator {j + 1} at coset {c}")
    return Presentation(tuple(names), tuple(rels), tuple(notes))


def bar_name(name: str) -> str:
    return name + "bar"


def double_cover(p: Presentation, delta: str) -> Presentation:
    """Kernel of ``delta -> 1, other generators -> 0`` (mod 2) in ``p / delta^2``.

    Schreier transversal ``{1, delta}``: each generator ``x != delta`` yields
    ``x`` and ``xbar = delta^-1 x delta``; the generator ``delta^2`` is killed.
    Each relator ``R`` contributes ``R'`` (rewritten from coset 1) and the
    barred copy (rewritten from coset ``delta``)."""
    d = p.index(delta)
    others = [g for g in range(1, p.rank + 1) if g != d]
    names = []
    new_index = {}
    for g in others:
        new_index[(0, g)] = len(names) + 1
        names.append(p.generators[g - 1])
        new_index[(1, g)] = len(names) + 1
        names.append(bar_name(p.generators[g - 1]))

    def rewrite(word: Word, state: int) -> Word:
        out = []
        for x in word:
            if abs(x) == d:
                state ^= 1
            else:
                k = new_index[(state, abs(x))]
                out.append(k if x > 0 else -k)
        return free_reduce(out)

    rels, notes = [], []
    for j, r in enumerate(p.relators):
        note = p.notes[j]
        for state in (0, 1):
            if sum(1 for x in r if abs(x) == d) % 2:
                raise ValueError(
                    f"relator {p.format(r)} is not in the kernel of the map to Z/2"
                )
            w = rewrite(r, state)
            if w:
                rels.append(w)
                notes.append(note if state == 0 else (f"{note} (barred)" if note else "barred"))
    return Presentation(tuple(names), tuple(rels), tuple(notes))
