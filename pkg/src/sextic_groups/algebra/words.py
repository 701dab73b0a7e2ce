"""Free-group words as tuples of signed 1-based generator indices."""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("generator index 0 is not allowed")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def multiply(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def power(word: Sequence[int], n: int) -> Word:
    base = free_reduce(word) if n >= 0 else inverse(free_reduce(word))
    return multiply(*([base] * abs(n)))


def conjugate(word: Sequence[int], by: Sequence[int]) -> Word:
    """``by * word * by^-1``."""
    return multiply(by, word, inverse(by))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """``u v u^-1 v^-1``."""
    return multiply(u, v, inverse(u), inverse(v))


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def cyclic_rotations(word: Sequence[int]):
    w = tuple(word)
    for i in range(len(w)):
        yield w[i:] + w[:i]


def canonical_relator(word: Sequence[int]) -> Word:
    """Least cyclic rotation of the word or its inverse; identifies relators up to
    cyclic permutation and inversion."""
    w = cyclic_reduce(word)
    if not w:
        return w
    candidates = list(cyclic_rotations(w)) + list(cyclic_rotations(inverse(w)))
    return min(candidates, key=lambda c: (len(c), tuple((abs(x), -x) for x in c)))


def exponent_sums(word: Sequence[int], rank: int) -> list[int]:
    sums = [0] * rank
    for x in word:
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return sums


def substitute(word: Sequence[int], images: dict[int, Sequence[int]]) -> Word:
    """Replace generator ``g`` (positive index) by ``images[g]``; others kept."""
    out: list[int] = []
    for x in word:
        g = abs(x)
        if g in images:
            img = images[g] if x > 0 else inverse(images[g])
        else:
            img = (x,)
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def format_word(word: Sequence[int], names: Sequence[str]) -> str:
    if not word:
        return "1"
    return " ".join(names[x - 1] if x > 0 else f"{names[-x - 1]}^-1" for x in word)
