"""Structures, presentations and display postulates.

A structure is either a formula leaf or one of three binary nodes:
``STimes(l, r)`` is the structural product, ``SOslash(l, r)`` and
``SObslash(l, r)`` the structural coimplications (``l </ r`` and
``l \\> r``).  A presentation pairs two structures; it is read one-sided, so
``Presentation(g, d)`` is derivable when ``g`` and ``d`` together are.

Three display moves (a swap and two residuation moves) generate the
display class of a presentation.  Every substructure occurrence can be
brought to the right-hand side of exactly one member of that class.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from . import syntax
from .formula import (
    CoLDiv,
    CoRDiv,
    Formula,
    Par,
    RDiv,
    LDiv,
    Tensor,
    latex_formula,
    negate,
    print_formula,
    tree_to_formula,
)


@dataclass(frozen=True, slots=True)
class SNode:
    left: "Structure"
    right: "Structure"


@dataclass(frozen=True, slots=True)
class STimes(SNode):
    pass


@dataclass(frozen=True, slots=True)
class SOslash(SNode):
    pass


@dataclass(frozen=True, slots=True)
class SObslash(SNode):
    pass


@dataclass(frozen=True, slots=True)
class Hole:
    """Placeholder leaf used to track a position through display moves."""

    tag: int = 0


Structure = Union[Formula, SNode, Hole]

STRUCT_SYMBOL = {STimes: ".", SOslash: "</", SObslash: "\\>"}
STRUCT_CONSTRUCTOR = {sym: cls for cls, sym in STRUCT_SYMBOL.items()}


class Side(enum.Enum):
    LEFT = "L"
    RIGHT = "R"


@dataclass(frozen=True, slots=True)
class Presentation:
    left: Structure
    right: Structure

    def component(self, side: Side) -> Structure:
        return self.left if side is Side.LEFT else self.right

    def swap(self) -> "Presentation":
        return Presentation(self.right, self.left)


@dataclass(frozen=True, slots=True)
class Occurrence:
    """A position in a presentation: a side and a path of ``"L"``/``"R"`` steps."""

    side: Side
    path: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"side": self.side.value, "path": list(self.path)}

    @classmethod
    def from_json(cls, data: dict) -> "Occurrence":
        return cls(Side(data["side"]), tuple(data["path"]))


def is_leaf(s: Structure) -> bool:
    return not isinstance(s, SNode)


# -- traversal ---------------------------------------------------------------


def subterm(s: Structure, path: tuple[str, ...]) -> Structure:
    for step in path:
        if not isinstance(s, SNode):
            raise ValueError(f"path {path} leaves the structure")
        s = s.left if step == "L" else s.right
    return s


def replace(s: Structure, path: tuple[str, ...], new: Structure) -> Structure:
    if not path:
        return new
    if not isinstance(s, SNode):
        raise ValueError(f"path {path} leaves the structure")
    if path[0] == "L":
        return type(s)(replace(s.left, path[1:], new), s.right)
    return type(s)(s.left, replace(s.right, path[1:], new))


def positions(s: Structure, prefix: tuple[str, ...] = ()) -> Iterator[tuple[tuple[str, ...], Structure]]:
    """All (path, substructure) pairs in pre-order."""
    yield prefix, s
    if isinstance(s, SNode):
        yield from positions(s.left, prefix + ("L",))
        yield from positions(s.right, prefix + ("R",))


def leaves(s: Structure) -> Iterator[tuple[tuple[str, ...], Structure]]:
    return ((p, sub) for p, sub in positions(s) if not isinstance(sub, SNode))


def occurrences(w: Presentation) -> Iterator[tuple[Occurrence, Structure]]:
    for side in Side:
        for path, sub in positions(w.component(side)):
            yield Occurrence(side, path), sub


def leaf_occurrences(w: Presentation) -> Iterator[tuple[Occurrence, Structure]]:
    return ((occ, sub) for occ, sub in occurrences(w) if not isinstance(sub, SNode))


def node_count(s: Structure) -> int:
    return sum(1 for _ in positions(s))


def map_leaves(s: Structure, fn: Callable[[Structure], Structure]) -> Structure:
    if isinstance(s, SNode):
        return type(s)(map_leaves(s.left, fn), map_leaves(s.right, fn))
    return fn(s)


def collapse(s: Structure) -> Structure:
    """Relabel every structural node as a product."""
    if isinstance(s, SNode):
        return STimes(collapse(s.left), collapse(s.right))
    return s


# -- interpretation ------------------------------------------------------------


def interp_plus(s: Structure) -> Formula:
    """The formula a structure stands for in antecedent position."""
    match s:
        case STimes(l, r):
            return Tensor(interp_plus(l), interp_plus(r))
        case SObslash(l, r):
            return CoLDiv(interp_minus(l), interp_plus(r))
        case SOslash(l, r):
            return CoRDiv(interp_plus(l), interp_minus(r))
    return s


def interp_minus(s: Structure) -> Formula:
    """The dual reading; always ``negate(interp_plus(s))``."""
    match s:
        case STimes(l, r):
            return Par(interp_minus(r), interp_minus(l))
        case SObslash(l, r):
            return RDiv(interp_minus(r), interp_plus(l))
        case SOslash(l, r):
            return LDiv(interp_plus(r), interp_minus(l))
    return negate(s)


# -- display postulates --------------------------------------------------------


def display_moves(w: Presentation) -> Iterator[Presentation]:
    """One-step neighbours under the display postulates (both directions)."""
    yield w.swap()
    g, d = w.left, w.right
    if isinstance(g, STimes):
        yield Presentation(g.left, SObslash(g.right, d))
    if isinstance(d, SObslash):
        yield Presentation(STimes(g, d.left), d.right)
    if isinstance(d, STimes):
        yield Presentation(SOslash(g, d.left), d.right)
    if isinstance(g, SOslash):
        yield Presentation(g.left, STimes(g.right, d))


def closure(start: Presentation, moves: Callable[[Presentation], Iterator[Presentation]]) -> list[Presentation]:
    """Breadth-first closure of ``start`` under ``moves``, in discovery order."""
    seen = {start}
    order = [start]
    queue = deque(order)
    while queue:
        for nxt in moves(queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return order


def display_class(w: Presentation) -> frozenset[Presentation]:
    return frozenset(closure(w, display_moves))


def display(w: Presentation, occ: Occurrence) -> Presentation:
    """The member of ``w``'s display class with the occurrence on the right."""
    target = w.component(occ.side)
    marker = Hole(-1)
    marked = replace(target, occ.path, marker)
    tagged = Presentation(marked, w.right) if occ.side is Side.LEFT else Presentation(w.left, marked)
    found = [m for m in closure(tagged, display_moves) if m.right == marker]
    if len(found) != 1:
        raise AssertionError(f"display is not unique for {occ}")
    return Presentation(found[0].left, subterm(target, occ.path))


def canonical(w: Presentation) -> Presentation:
    """Least member of the display class under :func:`presentation_key`."""
    return min(display_class(w), key=presentation_key)


def display_equivalent(a: Presentation, b: Presentation) -> bool:
    return b in display_class(a)


# -- surface syntax -----------------------------------------------------------


def print_structure(s: Structure, top: bool = True) -> str:
    match s:
        case SNode(l, r):
            text = f"{print_structure(l, False)} {STRUCT_SYMBOL[type(s)]} {print_structure(r, False)}"
            return text if top else f"({text})"
        case Hole(tag):
            return f"[{tag}]" if tag else "[]"
        case CoRDiv() | CoLDiv():
            return "{" + print_formula(s) + "}"
    return print_formula(s, top)


def print_presentation(w: Presentation) -> str:
    return f"{print_structure(w.left)} ; {print_structure(w.right)}"


def presentation_key(w: Presentation) -> str:
    return print_presentation(w)


def latex_structure(s: Structure, top: bool = True) -> str:
    match s:
        case STimes(l, r):
            return rf"\langle {latex_structure(l, False)} \cdot {latex_structure(r, False)} \rangle"
        case SOslash(l, r):
            return rf"\langle {latex_structure(l, False)} \oslash {latex_structure(r, False)} \rangle"
        case SObslash(l, r):
            return rf"\langle {latex_structure(l, False)} \obslash {latex_structure(r, False)} \rangle"
        case Hole():
            return r"[\,]"
    return latex_formula(s, top)


def latex_presentation(w: Presentation) -> str:
    return rf"\langle {latex_structure(w.left)} \,;\, {latex_structure(w.right)} \rangle"


def tree_to_structure(tree: syntax.Tree, allow_shifts: bool = False) -> Structure:
    if isinstance(tree, syntax.Op) and tree.op in STRUCT_CONSTRUCTOR:
        cls = STRUCT_CONSTRUCTOR[tree.op]
        return cls(tree_to_structure(tree.left, allow_shifts), tree_to_structure(tree.right, allow_shifts))
    return tree_to_formula(tree, allow_shifts)


def parse_structure(text: str, allow_shifts: bool = False) -> Structure:
    """Read a structure.  ``.``, ``</`` and ``\\>`` at structure level are
    structural; wrap a coimplication formula leaf in braces, ``{p </ q}``."""
    parser = syntax.Parser(text)
    tree = parser.expression()
    parser.expect_end()
    return tree_to_structure(tree, allow_shifts)


def parse_presentation(text: str, allow_shifts: bool = False) -> Presentation:
    """Read ``S ; S`` or the sequent form ``S => F``, which stands for
    ``S ; negate(F)``."""
    parser = syntax.Parser(text)
    left = tree_to_structure(parser.expression(), allow_shifts)
    tok = parser.peek
    if tok.kind == ";":
        parser.advance()
        right = tree_to_structure(parser.expression(), allow_shifts)
    elif tok.kind == "=>":
        parser.advance()
        right = negate(tree_to_formula(parser.expression(), allow_shifts))
    else:
        raise parser.fail({";", "=>"})
    parser.expect_end()
    return Presentation(left, right)
