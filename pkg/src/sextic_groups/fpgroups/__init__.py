"""Finitely presented groups."""

from .cosets import CosetCapExceeded, CosetTable, group_order, todd_coxeter
from .invariants import (
    InvariantSuite,
    abelianization,
    alexander_polynomial,
    commutant_abelianization,
    invariant_suite,
    power_quotient,
)
from .homs import FiniteGroup, catalogue, fingerprint, hom_count
from .perturbation import apply_perturbation, enumerate_perturbations
from .presentation import Presentation, parse_word
from .schreier import double_cover, reidemeister_schreier
from .tietze import tietze_simplify
from .vankampen import braid_relators, vankampen

__all__ = [
    "CosetCapExceeded",
    "CosetTable",
    "FiniteGroup",
    "InvariantSuite",
    "Presentation",
    "abelianization",
    "alexander_polynomial",
    "apply_perturbation",
    "braid_relators",
    "catalogue",
    "commutant_abelianization",
    "double_cover",
    "enumerate_perturbations",
    "fingerprint",
    "group_order",
    "hom_count",
    "invariant_suite",
    "parse_word",
    "power_quotient",
    "reidemeister_schreier",
    "tietze_simplify",
    "todd_coxeter",
    "vankampen",
]
