"""Budgeted, deterministic Tietze simplification.

Only relator moves and generator eliminations are used, so the surviving
generators are a subset of the original ones (useful when they carry
meaning, e.g. meridians).
"""

from __future__ import annotations

from typing import Iterable

from ..algebra.words import Word, canonical_relator, cyclic_reduce, inverse, substitute
from .presentation import Presentation


def _clean(relators: Iterable[Word]) -> list[Word]:
    seen, out = set(), []
    for r in relators:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = canonical_relator(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(key)
    out.sort(key=lambda w: (len(w), w))
    return out


def _occurrences(word: Word, g: int) -> int:
    return sum(1 for x in word if abs(x) == g)


def _find_elimination(rels: list[Word], gens: list[int], protected: set[int], max_len: int):
    """Shortest relator in which some unprotected generator occurs exactly once."""
    best = None
    for r in rels:
        if len(r) > max_len or (best is not None and len(r) >= len(best[0])):
            continue
        for g in sorted({abs(x) for x in r}, reverse=True):
            if g in protected or g not in gens:
                continue
            if _occurrences(r, g) == 1:
                cost = sum(_occurrences(s, g) for s in rels) * (len(r) - 1)
                cand = (r, g, cost)
                if best is None or len(r) < len(best[0]) or (len(r) == len(best[0]) and cost < best[2]):
                    best = cand
        if best is not None and len(best[0]) <= 2:
            break
    return best


def _solve_for(r: Word, g: int) -> Word:
    """Rewrite the relator ``r`` (with one occurrence of g) as ``g = w``."""
    k = next(i for i, x in enumerate(r) if abs(x) == g)
    rot = r[k:] + r[:k]  # g^e * rest = 1
    rest = rot[1:]
    return inverse(rest) if rot[0] > 0 else rest


def _shorten_pass(rels: list[Word]) -> tuple[list[Word], bool]:
    """Replace long cyclic subwords of a relator using a shorter relator."""
    changed = False
    rels = list(rels)
    for si, s in enumerate(rels):
        n = len(s)
        if n < 2 or n > 24:
            continue
        pieces = []
        for rot in set(list(_rotations(s)) + list(_rotations(inverse(s)))):
            for k in range(n // 2 + 1, n + 1):
                # rot[:k] == (rot[k:])^-1, so a subword rot[:k] may be replaced
                pieces.append((rot[:k], inverse(rot[k:])))
        pieces.sort(key=lambda p: (-len(p[0]) + len(p[1]), p))
        for ri in range(len(rels)):
            if ri == si:
                continue
            r = rels[ri]
            if len(r) < n // 2 + 1:
                continue
            for old, new in pieces:
                if len(new) >= len(old):
                    continue
                rr = _replace_cyclic(r, old, new)
                if rr is not None:
                    rels[ri] = cyclic_reduce(rr)
                    r = rels[ri]
                    changed = True
    return rels, changed


def _rotations(w: Word):
    for i in range(len(w)):
        yield w[i:] + w[:i]


def _replace_cyclic(r: Word, old: Word, new: Word):
    n, k = len(r), len(old)
    if k > n:
        return None
    doubled = r + r
    for i in range(n):
        if doubled[i:i + k] == old:
            rest = doubled[i + k:i + n]
            return cyclic_reduce(new + rest)
    return None


def tietze_simplify(
    p: Presentation,
    budget: int = 200,
    protected: Iterable[str] = (),
    max_relator_length: int = 400,
) -> Presentation:
    """Simplify ``p`` by eliminations and relator shortening, at most ``budget``
    moves. Generators named in ``protected`` are never eliminated."""
    gens = list(range(1, p.rank + 1))
    prot = {p.index(name) for name in protected}
    rels = _clean(p.relators)
    moves = 0
    while moves < budget:
        moves += 1
        cand = _find_elimination(rels, gens, prot, max_relator_length)
        if cand is not None:
            r, g, _ = cand
            image = _solve_for(r, g)
            new_rels = _clean(substitute(s, {g: image}) for s in rels if s != r)
            if sum(map(len, new_rels)) <= 4 * sum(map(len, rels)) + 50 and all(
                len(s) <= max_relator_length for s in new_rels
            ):
                rels = new_rels
                gens.remove(g)
                continue
            prot.add(g)
            continue
        rels2, changed = _shorten_pass(rels)
        rels2 = _clean(rels2)
        if not changed or (sum(map(len, rels2)), len(rels2)) >= (sum(map(len, rels)), len(rels)):
            break
        rels = rels2
    # renumber the surviving generators in their original order
    keep = [g for g in range(1, p.rank + 1) if g in gens]
    renum = {g: i + 1 for i, g in enumerate(keep)}
    out = [tuple((renum[abs(x)] if x > 0 else -renum[abs(x)]) for x in r) for r in rels]
    return Presentation(tuple(p.generators[g - 1] for g in keep), tuple(out))
