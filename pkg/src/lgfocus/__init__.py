"""Focused proof search, polarization and phase semantics for the
Lambek-Grishin calculus and its classical and linear-distributivity
variants."""

from .calculus import Variant
from .focused import enumerate_proofs, prove_presentation
from .formula import negate, parse_formula, print_formula
from .phase import Model, PhaseSpace, countermodel_search, soundness_check
from .polarized import decorate, decorate_presentation, forget, pol_negate
from .structure import Occurrence, Presentation, Side, display, display_class, parse_presentation
from .unfocused import check, prove

__all__ = [
    "Model",
    "Occurrence",
    "PhaseSpace",
    "Presentation",
    "Side",
    "Variant",
    "check",
    "countermodel_search",
    "decorate",
    "decorate_presentation",
    "display",
    "display_class",
    "enumerate_proofs",
    "forget",
    "negate",
    "parse_formula",
    "parse_presentation",
    "pol_negate",
    "print_formula",
    "prove",
    "prove_presentation",
    "soundness_check",
]
