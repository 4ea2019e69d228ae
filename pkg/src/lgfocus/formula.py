"""Formulas of the Lambek-Grishin calculus.

Atoms come in two signs: ``p`` is positive and ``~p`` (its dual) negative.
There are eight binary connectives, each with a fixed polarity, and
negation is not a constructor but an involution computed by :func:`negate`.
The shifts :class:`Up` and :class:`Down` only occur in polarized formulas
(see :mod:`lgfocus.polarized`).

Binary nodes store their operands in surface order, so ``LDiv(b, a)`` is
``b \\ a`` and ``CoLDiv(b, a)`` is ``b \\> a``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union

from . import syntax


class Polarity(enum.Enum):
    POS = "+"
    NEG = "-"

    def flip(self) -> "Polarity":
        return Polarity.NEG if self is Polarity.POS else Polarity.POS


@dataclass(frozen=True, slots=True)
class PosAtom:
    name: str


@dataclass(frozen=True, slots=True)
class NegAtom:
    name: str


@dataclass(frozen=True, slots=True)
class Binary:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Tensor(Binary):
    pass


@dataclass(frozen=True, slots=True)
class Par(Binary):
    pass


@dataclass(frozen=True, slots=True)
class RDiv(Binary):
    pass


@dataclass(frozen=True, slots=True)
class LDiv(Binary):
    pass


@dataclass(frozen=True, slots=True)
class CoRDiv(Binary):
    pass


@dataclass(frozen=True, slots=True)
class CoLDiv(Binary):
    pass


@dataclass(frozen=True, slots=True)
class And(Binary):
    pass


@dataclass(frozen=True, slots=True)
class Or(Binary):
    pass


@dataclass(frozen=True, slots=True)
class Up:
    """Shift from a positive formula to a negative one."""

    body: "Formula"


@dataclass(frozen=True, slots=True)
class Down:
    """Shift from a negative formula to a positive one."""

    body: "Formula"


Formula = Union[PosAtom, NegAtom, Binary, Up, Down]
Atomic = (PosAtom, NegAtom)

SYMBOL = {
    Tensor: "*",
    Par: "+",
    RDiv: "/",
    LDiv: "\\",
    CoRDiv: "</",
    CoLDiv: "\\>",
    And: "&",
    Or: "|",
}
CONNECTIVE = {sym: cls for cls, sym in SYMBOL.items()}

DUAL = {
    Tensor: Par,
    Par: Tensor,
    RDiv: CoLDiv,
    CoLDiv: RDiv,
    LDiv: CoRDiv,
    CoRDiv: LDiv,
    And: Or,
    Or: And,
}

POSITIVE_CONNECTIVES = frozenset({Tensor, CoRDiv, CoLDiv, Or})


def negate(a: Formula) -> Formula:
    """Linear negation; dualizes the connective and swaps the operands."""
    match a:
        case PosAtom(name):
            return NegAtom(name)
        case NegAtom(name):
            return PosAtom(name)
        case Up(body):
            return Down(negate(body))
        case Down(body):
            return Up(negate(body))
        case Binary(left, right):
            return DUAL[type(a)](negate(right), negate(left))
    raise TypeError(f"not a formula: {a!r}")


def polarity(a: Formula) -> Polarity:
    if isinstance(a, (PosAtom, Down)):
        return Polarity.POS
    if isinstance(a, (NegAtom, Up)):
        return Polarity.NEG
    return Polarity.POS if type(a) in POSITIVE_CONNECTIVES else Polarity.NEG


def is_positive(a: Formula) -> bool:
    return polarity(a) is Polarity.POS


def size(a: Formula) -> int:
    """Number of connectives, shifts included."""
    match a:
        case PosAtom() | NegAtom():
            return 0
        case Up(body) | Down(body):
            return 1 + size(body)
        case Binary(left, right):
            return 1 + size(left) + size(right)
    raise TypeError(f"not a formula: {a!r}")


def atoms(a: Formula) -> set[str]:
    return {sub.name for sub in subformulas(a) if isinstance(sub, Atomic)}


def subformulas(a: Formula) -> Iterator[Formula]:
    yield a
    match a:
        case Up(body) | Down(body):
            yield from subformulas(body)
        case Binary(left, right):
            yield from subformulas(left)
            yield from subformulas(right)


def has_shifts(a: Formula) -> bool:
    return any(isinstance(sub, (Up, Down)) for sub in subformulas(a))


# -- surface syntax -----------------------------------------------------------


def print_formula(a: Formula, top: bool = True) -> str:
    """Canonical ASCII form.  Every binary subformula is parenthesized; the
    outermost one is left bare."""
    match a:
        case PosAtom(name):
            return name
        case NegAtom(name):
            return "~" + name
        case Up(body):
            return "^" + print_formula(body, top=False)
        case Down(body):
            return "_" + print_formula(body, top=False)
        case Binary(left, right):
            text = f"{print_formula(left, False)} {SYMBOL[type(a)]} {print_formula(right, False)}"
            return text if top else f"({text})"
    raise TypeError(f"not a formula: {a!r}")


_UNICODE = {
    Tensor: "⊗",
    Par: "⊕",
    RDiv: "/",
    LDiv: "\\",
    CoRDiv: "⊘",
    CoLDiv: "⦸",
    And: "∧",
    Or: "∨",
}

_LATEX = {
    Tensor: r"\otimes",
    Par: r"\oplus",
    RDiv: "/",
    LDiv: r"\backslash",
    CoRDiv: r"\oslash",
    CoLDiv: r"\obslash",
    And: r"\wedge",
    Or: r"\vee",
}


def latex_formula(a: Formula, top: bool = True) -> str:
    match a:
        case PosAtom(name):
            return name
        case NegAtom(name):
            return rf"\bar{{{name}}}"
        case Up(body):
            return r"{\uparrow}" + latex_formula(body, False)
        case Down(body):
            return r"{\downarrow}" + latex_formula(body, False)
        case Binary(left, right):
            text = f"{latex_formula(left, False)} {_LATEX[type(a)]} {latex_formula(right, False)}"
            return text if top else f"({text})"
    raise TypeError(f"not a formula: {a!r}")


def unicode_formula(a: Formula, top: bool = True) -> str:
    match a:
        case PosAtom(name):
            return name
        case NegAtom(name):
            return name + "̄"
        case Up(body):
            return "↑" + unicode_formula(body, False)
        case Down(body):
            return "↓" + unicode_formula(body, False)
        case Binary(left, right):
            text = f"{unicode_formula(left, False)}{_UNICODE[type(a)]}{unicode_formula(right, False)}"
            return text if top else f"({text})"
    raise TypeError(f"not a formula: {a!r}")


def tree_to_formula(tree: syntax.Tree, allow_shifts: bool = False) -> Formula:
    match tree:
        case syntax.Atom(name, negative, _):
            return NegAtom(name) if negative else PosAtom(name)
        case syntax.Braced(inner, _):
            return tree_to_formula(inner, allow_shifts)
        case syntax.Shift(kind, body, offset):
            if not allow_shifts:
                raise syntax.ParseError(offset, {"atom", "~", "("}, f"shift {kind!r}")
            inner = tree_to_formula(body, allow_shifts)
            return Up(inner) if kind == "^" else Down(inner)
        case syntax.Op(op, left, right, offset):
            if op not in CONNECTIVE:
                raise syntax.ParseError(offset, set(CONNECTIVE), f"structural {op!r} inside a formula")
            return CONNECTIVE[op](tree_to_formula(left, allow_shifts), tree_to_formula(right, allow_shifts))
    raise TypeError(tree)


def parse_formula(text: str, allow_shifts: bool = False) -> Formula:
    """Read a formula; ``parse_formula(print_formula(a)) == a``."""
    parser = syntax.Parser(text)
    tree = parser.expression()
    parser.expect_end()
    return tree_to_formula(tree, allow_shifts)
