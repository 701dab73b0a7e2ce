"""Finite presentations and their text format.

Format::

    gens: a, b, c; rels: a b a^-1 b^-1, (a b)^3;

Relators are whitespace-separated factors; a factor is a generator name or a
parenthesised group, optionally followed by ``^n`` (``n`` may be negative).
Two conveniences beyond bare relators are accepted: ``lhs = rhs`` (read as
``lhs rhs^-1``) and commutators ``[u ; v]`` (``u v u^-1 v^-1``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from ..algebra.words import Word, format_word, free_reduce, inverse, multiply, power


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be unique")
        rels = tuple(free_reduce(r) for r in self.relators)
        for r in rels:
            if any(abs(x) > len(gens) for x in r):
                raise ValueError("relator uses an unknown generator")
        notes = tuple(self.notes) + (None,) * (len(rels) - len(self.notes))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)
        object.__setattr__(self, "notes", notes[: len(rels)])

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        """1-based index of a generator."""
        try:
            return self.generators.index(name) + 1
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self, w: Sequence[int]) -> str:
        return format_word(w, self.generators)

    def with_relators(self, extra: Iterable, notes: Iterable | None = None) -> "Presentation":
        extra = [self.word(r) if isinstance(r, str) else tuple(r) for r in extra]
        notes = list(notes) if notes is not None else [None] * len(extra)
        return Presentation(self.generators, self.relators + tuple(extra), self.notes + tuple(notes))

    def power_quotient(self, n: int) -> "Presentation":
        """Adjoin ``g^n`` for every generator."""
        return self.with_relators([(g,) * n for g in range(1, self.rank + 1)], [f"g^{n}"] * self.rank)

    def rename(self, names: Sequence[str]) -> "Presentation":
        return Presentation(tuple(names), self.relators, self.notes)

    def to_text(self) -> str:
        rels = ", ".join(self.format(r) for r in self.relators)
        return f"gens: {', '.join(self.generators)}; rels: {rels};"

    __str__ = to_text

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        return parse_presentation(text)

    @classmethod
    def load(cls, path: str | Path) -> "Presentation":
        return parse_presentation(Path(path).read_text())


_HEAD = re.compile(r"^\s*gens\s*:(?P<gens>[^;]*);\s*rels\s*:(?P<rels>.*?);?\s*$", re.S)
_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9']*|1)|(?P<pow>\^\s*-?\d+)|(?P<sym>[()\[\];=]))")


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def _split_top(text: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _comments_to_notes(text: str) -> str:
    # keep comments after "rels:" as {note} markers, drop the others
    head, sep, body = text.partition("rels")
    body = re.sub(
        r"#([^\n]*)",
        lambda m: "{" + m.group(1).strip().replace(",", "\x00").replace(";", "\x01") + "}",
        body,
    )
    return _strip_comments(head) + sep + body


_NOTE = re.compile(r"\{([^}]*)\}")


def parse_presentation(text: str) -> Presentation:
    """Parse the text format; a ``# comment`` after a relator becomes its note."""
    text = _comments_to_notes(text)
    m = _HEAD.match(text)
    if not m:
        raise ValueError("expected 'gens: ...; rels: ...;'")
    gens = tuple(g.strip() for g in m.group("gens").split(",") if g.strip())
    body = m.group("rels").strip()
    rels, notes = [], []
    for part in _split_top(body, ","):
        m_lead = re.match(r"\s*((?:\{[^}]*\}\s*)*)", part)
        lead = m_lead.group(1)
        if notes and lead:
            extra = "; ".join(_NOTE.findall(lead))
            notes[-1] = (notes[-1] + "; " + extra) if notes[-1] else extra
        part = part[m_lead.end():]
        found = [n.replace("\x00", ",").replace("\x01", ";") for n in _NOTE.findall(part)]
        part = _NOTE.sub(" ", part).strip().rstrip(";").strip()
        if part:
            rels.append(parse_word(part, gens))
            notes.append("; ".join(found))
        elif found and notes:
            notes[-1] = "; ".join(x for x in (notes[-1], *found) if x)
    notes = [n.replace("\x00", ",").replace("\x01", ";") or None for n in notes]
    return Presentation(gens, tuple(rels), tuple(notes) if any(notes) else ())


def parse_word(text: str, gens: Sequence[str]) -> Word:
    """Parse a word, an equation ``u = v`` or a commutator ``[u ; v]``."""
    pieces = _split_top(text, "=")
    if len(pieces) > 1:
        words = [_parse_product(p, gens) for p in pieces]
        if len(words) != 2:
            raise ValueError("chained equations are not supported in a single relator")
        return multiply(words[0], inverse(words[1]))
    return _parse_product(text, gens)


def _parse_product(text: str, gens: Sequence[str]) -> Word:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad word syntax near {text[pos:]!r}")
        tokens.append(m)
        pos = m.end()
    index = {g: i + 1 for i, g in enumerate(gens)}
    word, i = _parse_seq(tokens, 0, index, closer=None)
    if i != len(tokens):
        raise ValueError("unbalanced brackets")
    return word


def _parse_seq(tokens, i, index, closer):
    out: Word = ()
    while i < len(tokens):
        t = tokens[i]
        if t.group("sym") in (")", "]", ";"):
            if t.group("sym") != closer and not (closer == "]" and t.group("sym") == ";"):
                raise ValueError(f"unexpected {t.group('sym')!r}")
            return out, i
        if t.group("name"):
            name = t.group("name")
            if name == "1":
                factor = ()
            elif name not in index:
                raise ValueError(f"unknown generator {name!r}")
            else:
                factor = (index[name],)
            i += 1
        elif t.group("sym") == "(":
            factor, i = _parse_seq(tokens, i + 1, index, ")")
            i += 1
        elif t.group("sym") == "[":
            u, i = _parse_seq(tokens, i + 1, index, "]")
            if i >= len(tokens) or tokens[i].group("sym") != ";":
                raise ValueError("commutator needs '[u ; v]'")
            v, i = _parse_seq(tokens, i + 1, index, "]")
            factor = multiply(u, v, inverse(u), inverse(v))
            i += 1
        else:
            raise ValueError("exponent without a base")
        if i < len(tokens) and tokens[i].group("pow"):
            n = int(tokens[i].group("pow")[1:].strip())
            factor = power(factor, n)
            i += 1
        out = multiply(out, factor)
    if closer is not None:
        raise ValueError("unbalanced brackets")
    return out, i
