"""Logic variants and their presentation-level structural machinery."""

from __future__ import annotations

import enum
from typing import Iterator

from .formula import Binary, CoLDiv, CoRDiv, Formula, LDiv, Par, RDiv, Tensor, negate
from .structure import (
    Presentation,
    map_leaves,
    SOslash,
    SObslash,
    STimes,
    closure,
    collapse,
    display_moves,
    presentation_key,
)


class Variant(enum.Enum):
    LG0 = "lg0"
    LGI = "lgi"
    CNL = "cnl"
    CNL_COMPACT = "cnl-compact"

    @classmethod
    def parse(cls, text: str | "Variant") -> "Variant":
        if isinstance(text, Variant):
            return text
        return cls(text.lower().replace("_", "-"))


def compact_moves(w: Presentation) -> Iterator[Presentation]:
    """Display moves of the product-only calculus."""
    yield w.swap()
    g, d = w.left, w.right
    if isinstance(g, STimes):
        yield Presentation(g.left, STimes(g.right, d))
    if isinstance(d, STimes):
        yield Presentation(STimes(g, d.left), d.right)


def compact_formula(a: Formula) -> Formula:
    """Rewrite implications and coimplications into products and pars,
    which the classical variant identifies with them."""
    if not isinstance(a, Binary):
        return a
    left, right = compact_formula(a.left), compact_formula(a.right)
    match a:
        case RDiv():
            return Par(left, negate(right))
        case LDiv():
            return Par(negate(left), right)
        case CoRDiv():
            return Tensor(left, negate(right))
        case CoLDiv():
            return Tensor(negate(left), right)
    return type(a)(left, right)


def to_compact(w: Presentation) -> Presentation:
    """The product-only presentation of the classical variant equal to ``w``."""
    return Presentation(*(map_leaves(collapse(s), compact_formula) for s in (w.left, w.right)))


def _collapsed_moves(w: Presentation) -> Iterator[Presentation]:
    for m in display_moves(w):
        yield Presentation(collapse(m.left), collapse(m.right))


def normalize(w: Presentation, variant: Variant) -> Presentation:
    if variant is Variant.CNL:
        return Presentation(collapse(w.left), collapse(w.right))
    return w


def equivalence_class(w: Presentation, variant: Variant) -> list[Presentation]:
    """Presentations interderivable with ``w`` by display moves (and, under
    CNL, by relabelling structural nodes), in discovery order."""
    if variant is Variant.CNL:
        return closure(normalize(w, variant), _collapsed_moves)
    if variant is Variant.CNL_COMPACT:
        return closure(w, compact_moves)
    return closure(w, display_moves)


def class_key(w: Presentation, variant: Variant) -> str:
    return min(presentation_key(m) for m in equivalence_class(w, variant))


def equivalent(a: Presentation, b: Presentation, variant: Variant) -> bool:
    return class_key(a, variant) == class_key(b, variant)


GRISHIN_RULES = ("G1", "G2", "Gc")


def grishin_steps(w: Presentation) -> Iterator[tuple[str, Presentation]]:
    """Backward linear-distributivity steps: when both components of ``w`` are
    products, yield each rule name with the premise it asks for."""
    if isinstance(w.left, STimes) and isinstance(w.right, STimes):
        g1, g2 = w.left.left, w.left.right
        d2, d1 = w.right.left, w.right.right
        yield "G1", Presentation(SOslash(g2, d2), SOslash(d1, g1))
        yield "G2", Presentation(SObslash(d1, g1), SObslash(g2, d2))
        yield "Gc", Presentation(SOslash(d2, g1), SObslash(d1, g2))
