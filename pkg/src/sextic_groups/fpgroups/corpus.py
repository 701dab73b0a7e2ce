"""Shipped presentations: the five reference groups, the four orbifold
relation lists (before the double cover) and the rewritten relation systems."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path

from .presentation import Presentation
from .schreier import bar_name

GROUPS = {
    "B3": "b3.txt",
    "G0": "g0.txt",
    "G3": "g3.txt",
    "G2.1": "g2_1.txt",
    "G2.2": "g2_2.txt",
}

# family name -> (orbifold relation list, rewritten system, reference group)
FAMILIES = {
    "3e6+a1": ("pi_bar_3e6_a1.txt", "system_3e6_a1.txt", "G0"),
    "2e6+2a2+a3": ("pi_bar_2e6_2a2_a3.txt", "system_2e6_2a2_a3.txt", "G3"),
    "2e6+a5+a2.1": ("pi_bar_2e6_a5_a2_1.txt", "system_2e6_a5_a2_1.txt", "G2.1"),
    "2e6+a5+a2.2": ("pi_bar_2e6_a5_a2_2.txt", "system_2e6_a5_a2_2.txt", "G2.2"),
}


_override: Path | None = None


def use_data_dir(path: str | Path | None) -> None:
    """Read corpus files from ``path`` instead of the packaged copies
    (``None`` restores the packaged data)."""
    global _override
    _override = Path(path) if path is not None else None
    load_file.cache_clear()


@lru_cache(maxsize=None)
def load_file(filename: str) -> Presentation:
    if _override is not None:
        text = (_override / filename).read_text()
    else:
        text = resources.files(__package__).joinpath("data").joinpath(filename).read_text()
    return Presentation.parse(text)


def group(name: str) -> Presentation:
    try:
        return load_file(GROUPS[name])
    except KeyError:
        raise KeyError(f"unknown corpus group {name!r}; known: {', '.join(GROUPS)}") from None


def _family(name: str) -> tuple:
    try:
        return FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}") from None


def orbifold_relations(family: str) -> Presentation:
    return load_file(_family(family)[0])


def rewritten_system(family: str, closed: bool = True) -> Presentation:
    """Relations over the doubled alphabet; ``closed`` adds their bar images."""
    p = load_file(_family(family)[1])
    return bar_closure(p) if closed else p


def reference_group(family: str) -> str:
    return _family(family)[2]


def bar_closure(p: Presentation) -> Presentation:
    """Adjoin the image of every relator under ``x <-> xbar``."""
    swap = {}
    for i, g in enumerate(p.generators, 1):
        partner = g[: -len("bar")] if g.endswith("bar") else bar_name(g)
        if partner in p.generators:
            swap[i] = p.index(partner)
    images = [tuple((1 if x > 0 else -1) * swap.get(abs(x), abs(x)) for x in r) for r in p.relators]
    notes = [f"{n} (barred)" if n else "barred" for n in p.notes]
    return p.with_relators(images, notes)
