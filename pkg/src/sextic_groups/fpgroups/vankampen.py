"""Zariski-van Kampen assembly from braid monodromy."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..algebra.words import Word, free_reduce, inverse, multiply, power
from ..braids import Braid, artin_act
from .presentation import Presentation


def braid_relators(b: Braid, d: int | None = None) -> list[Word]:
    """``zeta_j^-1 * b(zeta_j)`` for each generator, dropping trivial ones."""
    d = b.strands if d is None else d
    if d != b.strands:
        raise ValueError(f"basis rank {d} differs from strand count {b.strands}")
    out = []
    for j in range(1, d + 1):
        r = free_reduce(multiply((-j,), artin_act(b, (j,))))
        if r:
            out.append(r)
    return out


def _entries(md) -> list[tuple]:
    entries = getattr(md, "braids", md)
    return [(e[0], e[1]) if isinstance(e, tuple) else (getattr(e, "position", None), e.braid) for e in entries]


def vankampen(md, k: int, names: Sequence[str] | None = None, d: int | None = None) -> Presentation:
    """Presentation ``<zeta_1..zeta_d | braid relators, (zeta_1...zeta_d)^k>``.

    ``md`` is a MonodromyData or any sequence of ``(position, Braid)``.
    ``names`` renames the generators (e.g. after the basis naming map)."""
    if k < 1:
        raise ValueError("surface index must be positive")
    entries = _entries(md)
    counts = {b.strands for _, b in entries}
    if d is None:
        d = getattr(md, "degree", None) or (counts.pop() if len(counts) == 1 else None)
        if d is None:
            raise ValueError("inconsistent strand counts" if counts else "strand count unknown")
    if any(b.strands != d for _, b in entries):
        raise ValueError("inconsistent strand counts")
    if names is None:
        names = getattr(md, "names", None) or [f"z{j}" for j in range(1, d + 1)]
    rels, notes = [], []
    for pos, b in entries:
        for r in braid_relators(b, d):
            rels.append(r)
            notes.append(f"fiber x={pos}" if pos is not None else None)
    rho = tuple(range(1, d + 1))
    rels.append(power(rho, k))
    notes.append("relation at infinity")
    return Presentation(tuple(names), tuple(rels), tuple(notes))
