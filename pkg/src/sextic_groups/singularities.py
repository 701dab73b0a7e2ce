"""Simple singularity types and tagged multisets of them."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

_TYPE = re.compile(r"^([ADE])(\d+)$")
_TERM = re.compile(r"^(\d*)\s*([ADEade])_?\[?(\d+)\]?$")


@dataclass(frozen=True, order=True)
class Singularity:
    kind: str  # "A", "D" or "E"
    index: int

    def __post_init__(self):
        if self.kind not in "ADE" or len(self.kind) != 1:
            raise ValueError(f"unknown singularity kind {self.kind!r}")
        if self.index < 1 or (self.kind == "D" and self.index < 4) or (self.kind == "E" and self.index not in (6, 7, 8)):
            raise ValueError(f"invalid singularity {self.kind}{self.index}")

    @classmethod
    def parse(cls, text: str) -> "Singularity":
        m = _TYPE.match(text.strip().upper())
        if not m:
            raise ValueError(f"bad singularity {text!r}")
        return cls(m.group(1), int(m.group(2)))

    @property
    def milnor(self) -> int:
        return self.index

    def __str__(self):
        return f"{self.kind}{self.index}"


def _sort_key(item):
    s, _ = item
    return ({"E": 0, "D": 1, "A": 2}[s.kind], -s.index)


@dataclass(frozen=True)
class SingularitySet:
    """Multiset of singularities split into inner and outer parts."""

    inner: tuple = ()
    outer: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "inner", tuple(sorted(self.inner, key=lambda s: _sort_key((s, 0)))))
        object.__setattr__(self, "outer", tuple(sorted(self.outer, key=lambda s: _sort_key((s, 0)))))

    @classmethod
    def of(cls, inner: Iterable = (), outer: Iterable = ()) -> "SingularitySet":
        conv = lambda xs: tuple(x if isinstance(x, Singularity) else Singularity.parse(x) for x in xs)
        return cls(conv(inner), conv(outer))

    @classmethod
    def parse(cls, text: str) -> "SingularitySet":
        """Read ``(2E6+2A2)+A3``; without parentheses every point is outer."""
        text = text.replace(" ", "").replace("⊕", "+")
        if text in ("", "0", "∅", "empty"):
            return cls()
        m = re.match(r"^\((.*)\)(?:\+(.*))?$", text)
        inner_text, outer_text = (m.group(1), m.group(2) or "") if m else ("", text)
        return cls(parse_sum(inner_text), parse_sum(outer_text))

    @property
    def points(self) -> tuple:
        return self.inner + self.outer

    @property
    def milnor(self) -> int:
        return sum(s.milnor for s in self.points)

    def counter(self) -> Counter:
        return Counter([(s, "inner") for s in self.inner] + [(s, "outer") for s in self.outer])

    def __str__(self):
        inner = format_sum(self.inner)
        outer = format_sum(self.outer)
        if not self.inner:
            return outer or "∅"
        return f"({inner})" + (f"+{outer}" if outer else "")


def parse_sum(text: str) -> tuple:
    out = []
    for term in filter(None, text.split("+")):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"bad singularity term {term!r}")
        k = int(m.group(1) or 1)
        out += [Singularity(m.group(2).upper(), int(m.group(3)))] * k
    return tuple(out)


def format_sum(points: Iterable[Singularity]) -> str:
    c = Counter(points)
    parts = []
    for s in sorted(c, key=lambda s: _sort_key((s, 0))):
        parts.append(f"{c[s] if c[s] > 1 else ''}{s}")
    return "+".join(parts)
