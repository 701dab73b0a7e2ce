"""Braid groups, the Artin action on free groups, and permutation images.

Convention: the letter ``s_i`` sends ``z_i -> z_i z_{i+1} z_i^-1`` and
``z_{i+1} -> z_i``. A braid acts letter by letter from the left, so
``act(b1 * b2, w) = act(b2, act(b1, w))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra.words import Word, free_reduce, inverse, multiply, substitute


@dataclass(frozen=True)
class Braid:
    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("a braid needs at least two strands")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"generator s{abs(x)} out of range for B{self.strands}")
        object.__setattr__(self, "letters", letters)

    def __mul__(self, other: "Braid") -> "Braid":
        if other.strands != self.strands:
            raise ValueError("strand counts differ")
        return Braid(self.strands, free_reduce(self.letters + other.letters))

    def __pow__(self, n: int) -> "Braid":
        base = self.letters if n >= 0 else inverse(self.letters)
        return Braid(self.strands, free_reduce(base * abs(n)))

    def inverse(self) -> "Braid":
        return Braid(self.strands, inverse(self.letters))

    def __len__(self):
        return len(self.letters)

    @classmethod
    def identity(cls, strands: int) -> "Braid":
        return cls(strands, ())

    @classmethod
    def full_twist(cls, strands: int) -> "Braid":
        return cls(strands, tuple(range(1, strands)) * strands)

    @classmethod
    def parse(cls, text: str) -> "Braid":
        m = re.fullmatch(r"\s*B(\d+)\s*:(.*)", text)
        if not m:
            raise ValueError(f"bad braid text {text!r}")
        letters = []
        for tok in m.group(2).split():
            t = re.fullmatch(r"s(\d+)(\^-1)?", tok)
            if not t:
                raise ValueError(f"bad braid letter {tok!r}")
            letters.append(-int(t.group(1)) if t.group(2) else int(t.group(1)))
        return cls(int(m.group(1)), tuple(letters))

    def __str__(self):
        body = " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in self.letters)
        return f"B{self.strands}: {body}".rstrip()


def _letter_images(letter: int, rank: int) -> dict[int, Word]:
    i = abs(letter)
    if letter > 0:
        return {i: (i, i + 1, -i), i + 1: (i,)}
    # inverse letter: z_i -> z_{i+1}, z_{i+1} -> z_{i+1}^-1 z_i z_{i+1}
    return {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}


def artin_act(b: Braid, w: Sequence[int]) -> Word:
    for x in w:
        if abs(x) > b.strands:
            raise ValueError(f"generator {abs(x)} outside rank {b.strands}")
    w = free_reduce(w)
    for letter in b.letters:
        w = substitute(w, _letter_images(letter, b.strands))
    return w


@dataclass(frozen=True)
class FreeGroupAutomorphism:
    rank: int
    images: tuple

    @classmethod
    def of_braid(cls, b: Braid) -> "FreeGroupAutomorphism":
        return cls(b.strands, tuple(artin_act(b, (j,)) for j in range(1, b.strands + 1)))

    @classmethod
    def conjugation(cls, rank: int, by: Sequence[int]) -> "FreeGroupAutomorphism":
        return cls(rank, tuple(multiply(by, (j,), inverse(by)) for j in range(1, rank + 1)))

    def __call__(self, w: Sequence[int]) -> Word:
        return substitute(w, {j + 1: img for j, img in enumerate(self.images)})

    def then(self, other: "FreeGroupAutomorphism") -> "FreeGroupAutomorphism":
        """Apply ``self`` first, then ``other`` (matches braid concatenation)."""
        return FreeGroupAutomorphism(self.rank, tuple(other(img) for img in self.images))


def braid_equal(b1: Braid, b2: Braid) -> bool:
    if b1.strands != b2.strands:
        raise ValueError("strand counts differ")
    return all(artin_act(b1, (j,)) == artin_act(b2, (j,)) for j in range(1, b1.strands + 1))


def permutation_of(b: Braid) -> tuple:
    """Image in S_n as a tuple ``p`` with ``p[i]`` the final position of the strand
    starting at position ``i`` (0-based)."""
    pos = list(range(b.strands))  # pos[k] = strand currently at position k
    for x in b.letters:
        i = abs(x) - 1
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    out = [0] * b.strands
    for k, strand in enumerate(pos):
        out[strand] = k
    return tuple(out)


def cycle_notation(perm: Sequence[int]) -> str:
    seen, cycles = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def rho(rank: int) -> Word:
    return tuple(range(1, rank + 1))


def braid_product(braids: Iterable[Braid]) -> Braid:
    braids = list(braids)
    if not braids:
        raise ValueError("empty product")
    out = Braid.identity(braids[0].strands)
    for b in braids:
        out = out * b
    return out
