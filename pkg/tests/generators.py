"""Seeded random generators for formulas, structures and presentations."""

from __future__ import annotations

import random

from lgfocus.formula import (
    POSITIVE_CONNECTIVES,
    And,
    CoLDiv,
    CoRDiv,
    Down,
    LDiv,
    NegAtom,
    Or,
    Par,
    PosAtom,
    RDiv,
    Tensor,
    Up,
    negate,
    size,
)
from lgfocus.polarized import SLOT_SORTS
from lgfocus.structure import Presentation, SOslash, SObslash, STimes

ALL_CONNECTIVES = (Tensor, Par, RDiv, LDiv, CoRDiv, CoLDiv, And, Or)
COMPACT_CONNECTIVES = (Tensor, Par, And, Or)
ATOMS = ("p", "q", "r")


def random_atom(rng: random.Random, names=ATOMS):
    name = rng.choice(names)
    return PosAtom(name) if rng.random() < 0.5 else NegAtom(name)


def random_formula(rng: random.Random, connectives: int, ops=ALL_CONNECTIVES, names=ATOMS):
    """A formula with exactly ``connectives`` binary connectives."""
    if connectives == 0:
        return random_atom(rng, names)
    left = rng.randint(0, connectives - 1)
    cls = rng.choice(ops)
    return cls(
        random_formula(rng, left, ops, names),
        random_formula(rng, connectives - 1 - left, ops, names),
    )


def random_polarized(rng: random.Random, budget: int, positive: bool | None = None, names=ATOMS):
    """A well-sorted polarized formula with about ``budget`` connectives."""
    if positive is None:
        positive = rng.random() < 0.5
    if budget <= 0:
        name = rng.choice(names)
        return PosAtom(name) if positive else NegAtom(name)
    if rng.random() < 0.2:
        body = random_polarized(rng, budget - 1, not positive, names)
        return Down(body) if positive else Up(body)
    cls = rng.choice([c for c in ALL_CONNECTIVES if (c in POSITIVE_CONNECTIVES) == positive])
    want_l, want_r = SLOT_SORTS[cls]
    left = rng.randint(0, budget - 1)
    return cls(
        random_polarized(rng, left, want_l.value == "+", names),
        random_polarized(rng, budget - 1 - left, want_r.value == "+", names),
    )


STRUCT_NODES = (STimes, SOslash, SObslash)


def random_structure(rng: random.Random, leaves: list, nodes=STRUCT_NODES):
    if len(leaves) == 1:
        return leaves[0]
    cut = rng.randint(1, len(leaves) - 1)
    return rng.choice(nodes)(random_structure(rng, leaves[:cut], nodes), random_structure(rng, leaves[cut:], nodes))


def random_presentation(rng: random.Random, max_connectives: int = 10, ops=ALL_CONNECTIVES, nodes=STRUCT_NODES, names=("p", "q")):
    """A presentation with at most ``max_connectives`` formula connectives.

    About half are built around a shared formula so that a useful fraction
    is provable."""
    total = rng.randint(1, max_connectives)
    n_leaves = rng.randint(2, 4)
    budget = [0] * n_leaves
    for _ in range(total):
        budget[rng.randrange(n_leaves)] += 1
    formulas = [random_formula(rng, b, ops, names) for b in budget]
    if rng.random() < 0.5 and n_leaves >= 2:
        # pair a formula with its negation so identities occur
        formulas[-1] = negate(formulas[0]) if size(formulas[0]) + sum(budget[1:-1]) <= max_connectives else formulas[-1]
    rng.shuffle(formulas)
    cut = rng.randint(1, n_leaves - 1)
    return Presentation(
        random_structure(rng, formulas[:cut], nodes),
        random_structure(rng, formulas[cut:], nodes),
    )


def _displayed(rng: random.Random, w: Presentation, variant: str):
    from lgfocus.calculus import Variant, equivalence_class

    members = equivalence_class(w, Variant.parse(variant))
    return rng.choice(members)


def _formula_count(w: Presentation) -> int:
    from lgfocus.structure import leaf_occurrences

    return sum(size(leaf) for _, leaf in leaf_occurrences(w))


def random_derivable(rng: random.Random, variant: str = "lg0", steps: int = 12, names=("p", "q", "r"), max_connectives: int = 10):
    """Apply random rules forwards from axioms and return the last
    presentation built; it is derivable in ``variant`` by construction."""
    from lgfocus.calculus import Variant, equivalence_class
    from lgfocus.structure import SNode, is_leaf

    pool = [Presentation(PosAtom(n), NegAtom(n)) for n in names]
    last = pool[0]
    for _ in range(steps):
        kind = rng.choice(["unfold", "binary", "binary", "with", "structural", "structural"])
        new = None
        if kind == "unfold":
            m = _displayed(rng, rng.choice(pool), variant)
            r = m.right
            if isinstance(r, SNode) and is_leaf(r.left) and is_leaf(r.right):
                if isinstance(r, STimes) or variant == "cnl":
                    cls = rng.choice((Tensor, CoRDiv, CoLDiv)) if variant == "cnl" else Tensor
                else:
                    cls = CoRDiv if isinstance(r, SOslash) else CoLDiv
                if cls is Tensor:
                    new = Presentation(m.left, Tensor(r.left, r.right))
                elif cls is CoRDiv:
                    new = Presentation(m.left, CoRDiv(r.left, negate(r.right)))
                else:
                    new = Presentation(m.left, CoLDiv(negate(r.left), r.right))
        elif kind == "binary":
            m1 = _displayed(rng, rng.choice(pool), variant)
            m2 = _displayed(rng, rng.choice(pool), variant)
            if is_leaf(m1.right) and is_leaf(m2.right):
                (gamma, a), (delta, b) = (m1.left, m1.right), (m2.left, m2.right)
                choice = rng.choice(("+", "/", "\\"))
                if choice == "+":
                    new = Presentation(STimes(delta, gamma), Par(a, b))
                elif choice == "/":
                    # premises <delta ; c> and <gamma ; a> give <delta \> gamma ; a / negate(c)>
                    new = Presentation(SObslash(delta, gamma), RDiv(a, negate(b)))
                else:
                    new = Presentation(SOslash(gamma, delta), LDiv(negate(b), a))
        elif kind == "with":
            m = _displayed(rng, rng.choice(pool), variant)
            if is_leaf(m.right):
                other = random_atom(rng, names)
                new = Presentation(m.left, And(m.right, other) if rng.random() < 0.5 else And(other, m.right))
        elif variant == "lgi":
            options = [c for m in equivalence_class(rng.choice(pool), Variant.LGI) for c in _grishin_forward(m)]
            if options:
                new = rng.choice(options)
        if new is not None and _formula_count(new) <= max_connectives:
            pool.append(new)
            last = new
    return last


def _grishin_forward(m: Presentation):
    """Conclusions of the linear-distributivity rules with premise ``m``."""
    g, d = m.left, m.right
    if isinstance(g, SOslash) and isinstance(d, SOslash):
        g2, d2, d1, g1 = g.left, g.right, d.left, d.right
        yield Presentation(STimes(g1, g2), STimes(d2, d1))
    if isinstance(g, SObslash) and isinstance(d, SObslash):
        d1, g1, g2, d2 = g.left, g.right, d.left, d.right
        yield Presentation(STimes(g1, g2), STimes(d2, d1))
    if isinstance(g, SOslash) and isinstance(d, SObslash):
        d2, g1, d1, g2 = g.left, g.right, d.left, d.right
        yield Presentation(STimes(g1, g2), STimes(d2, d1))


def random_formula_of_depth(rng: random.Random, max_depth: int, ops=ALL_CONNECTIVES, names=ATOMS):
    """A formula whose tree is at most ``max_depth`` connectives deep."""
    if max_depth == 0 or rng.random() < 0.25:
        return random_atom(rng, names)
    cls = rng.choice(ops)
    return cls(
        random_formula_of_depth(rng, max_depth - 1, ops, names),
        random_formula_of_depth(rng, max_depth - 1, ops, names),
    )
