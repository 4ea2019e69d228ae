"""Polarized formulas, the decoration translation, and a checker for the
polarized display calculus.

Every connective has a sort for each operand slot.  Decoration inserts the
least number of shifts needed to make an unpolarized formula well sorted;
forgetting erases them again.
"""

from __future__ import annotations

from .calculus import GRISHIN_RULES, Variant, equivalence_class, equivalent, grishin_steps, normalize
from .formula import (
    And,
    Binary,
    CoLDiv,
    CoRDiv,
    Down,
    Formula,
    LDiv,
    NegAtom,
    Or,
    Par,
    Polarity,
    PosAtom,
    RDiv,
    Tensor,
    Up,
    negate,
    polarity,
    tree_to_formula,
)
from .proof import CheckResult, ProofNode, Stoup
from .structure import (
    Presentation,
    SNode,
    SOslash,
    SObslash,
    STimes,
    Structure,
    display,
    leaf_occurrences,
    map_leaves,
    parse_presentation,
    parse_structure,
)
from . import syntax

POS, NEG = Polarity.POS, Polarity.NEG

# Required polarity of the (left, right) operand of each connective.
SLOT_SORTS = {
    Tensor: (POS, POS),
    Or: (POS, POS),
    CoRDiv: (POS, NEG),
    CoLDiv: (NEG, POS),
    Par: (NEG, NEG),
    And: (NEG, NEG),
    RDiv: (NEG, POS),
    LDiv: (POS, NEG),
}


class SortError(ValueError):
    pass


def is_well_sorted(a: Formula) -> bool:
    match a:
        case PosAtom() | NegAtom():
            return True
        case Up(body):
            return polarity(body) is POS and is_well_sorted(body)
        case Down(body):
            return polarity(body) is NEG and is_well_sorted(body)
        case Binary(left, right):
            want_l, want_r = SLOT_SORTS[type(a)]
            return (
                polarity(left) is want_l
                and polarity(right) is want_r
                and is_well_sorted(left)
                and is_well_sorted(right)
            )
    raise TypeError(a)


def require_sorted(a: Formula) -> Formula:
    if not is_well_sorted(a):
        raise SortError(f"ill-sorted polarized formula: {a!r}")
    return a


def pol_negate(a: Formula) -> Formula:
    return negate(require_sorted(a))


def _fit(a: Formula, want: Polarity) -> Formula:
    if polarity(a) is want:
        return a
    return Down(a) if want is POS else Up(a)


def decorate(a: Formula) -> Formula:
    """Shift-minimal polarized formula with the same polarity as ``a``."""
    match a:
        case PosAtom() | NegAtom():
            return a
        case Binary(left, right):
            want_l, want_r = SLOT_SORTS[type(a)]
            return type(a)(_fit(decorate(left), want_l), _fit(decorate(right), want_r))
    raise SortError(f"decoration expects an unpolarized formula, got {a!r}")


def forget(a: Formula) -> Formula:
    match a:
        case Up(body) | Down(body):
            return forget(body)
        case Binary(left, right):
            return type(a)(forget(left), forget(right))
    return a


def decorate_leaf(a: Formula) -> Formula:
    """Leaves of a polarized structure are positive."""
    return _fit(decorate(a), POS)


def decorate_structure(s: Structure) -> Structure:
    return map_leaves(s, decorate_leaf)


def decorate_presentation(w: Presentation) -> Presentation:
    return Presentation(decorate_structure(w.left), decorate_structure(w.right))


def parse_pol_formula(text: str) -> Formula:
    parser = syntax.Parser(text)
    tree = parser.expression()
    parser.expect_end()
    return require_sorted(tree_to_formula(tree, allow_shifts=True))


def parse_pol_presentation(text: str) -> Presentation:
    w = parse_presentation(text, allow_shifts=True)
    for _, leaf in leaf_occurrences(w):
        require_sorted(leaf)
    return w


def parse_pol_structure(text: str) -> Structure:
    return parse_structure(text, allow_shifts=True)


# -- checker -------------------------------------------------------------------

# Left rules that unfold a positive formula in place.
_UNFOLD = {
    "*L": (Tensor, lambda f: STimes(f.left, f.right)),
    "\\>L": (CoLDiv, lambda f: SObslash(negate(f.left), f.right)),
    "</L": (CoRDiv, lambda f: SOslash(f.left, negate(f.right))),
}

_RIGHT_RULES = {"*R": (Tensor, STimes), "\\>R": (CoLDiv, SObslash), "</R": (CoRDiv, SOslash)}

_DP_RULES = ("dp", "dp-swap", "dp-assoc1", "dp-assoc2")


def check_pol(proof: ProofNode, variant: Variant | str = Variant.LG0, hypotheses=()) -> CheckResult:
    """Verify a derivation in the polarized calculus.

    Display moves may be explicit (``dp-swap``, ``dp-assoc1``, ``dp-assoc2``,
    or ``dp`` for any display-equivalent premise) or left implicit: a
    presentation-level rule is accepted when its instance matches some member
    of the conclusion's display class.  Leaves named ``hyp`` must conclude one
    of ``hypotheses``.
    """
    variant = Variant.parse(variant)
    return _PolChecker(variant, tuple(hypotheses)).check(proof, ())


class _PolChecker:
    def __init__(self, variant: Variant, hypotheses: tuple):
        self.variant = variant
        self.hypotheses = hypotheses

    def check(self, node: ProofNode, path: tuple[int, ...]) -> CheckResult:
        reason = self._local(node)
        if reason:
            return CheckResult(False, path, f"{node.rule}: {reason}")
        for i, sub in enumerate(node.premises):
            result = self.check(sub, path + (i,))
            if not result:
                return result
        return CheckResult(True)

    def _eq(self, a, b) -> bool:
        return isinstance(a, Presentation) and isinstance(b, Presentation) and equivalent(a, b, self.variant)

    def _displayed(self, node: ProofNode):
        """Members of the conclusion's class with a leaf on the right."""
        c = node.conclusion
        if node.main is not None:
            return [normalize(display(c, node.main), self.variant)]
        return [m for m in equivalence_class(c, self.variant) if not isinstance(m.right, SNode)]

    def _local(self, node: ProofNode) -> str:
        rule, c = node.rule, node.conclusion
        prem = [p.conclusion for p in node.premises]
        if rule == "hyp":
            return "" if not prem and any(self._eq(c, h) or c == h for h in self.hypotheses) else "unknown hypothesis"
        if rule == "I":
            ok = isinstance(c, Stoup) and not prem and c.structure == c.formula and polarity(c.formula) is POS
            return "" if ok else "identity needs P |- P"
        if isinstance(c, Stoup):
            return self._stoup_rule(rule, c, prem)
        if not isinstance(c, Presentation):
            return "unexpected judgment"
        if rule in _DP_RULES:
            return self._dp_rule(rule, c, prem)
        if rule in GRISHIN_RULES:
            ok = self.variant is Variant.LGI and len(prem) == 1 and any(
                name == rule and self._eq(p, prem[0])
                for m in equivalence_class(c, self.variant)
                for name, p in grishin_steps(m)
            )
            return "" if ok else "structural step does not match"
        if rule == "T":
            return self._cut(c, prem)
        if rule == "_L":
            ok = len(prem) == 1 and isinstance(prem[0], Stoup) and any(
                isinstance(m.right, Down)
                and prem[0].structure == m.left
                and prem[0].formula == negate(m.right.body)
                for m in self._displayed(node)
            )
            return "" if ok else "shift-left needs Γ |- N⊥ for Γ ; ↓N"
        if rule in _UNFOLD:
            cls, unfold = _UNFOLD[rule]
            ok = len(prem) == 1 and any(
                isinstance(m.right, cls) and self._eq(Presentation(m.left, unfold(m.right)), prem[0])
                for m in self._displayed(node)
            )
            return "" if ok else "unfolding does not match"
        if rule == "|L":
            ok = len(prem) == 2 and any(
                isinstance(m.right, Or)
                and self._eq(Presentation(m.left, m.right.left), prem[0])
                and self._eq(Presentation(m.left, m.right.right), prem[1])
                for m in self._displayed(node)
            )
            return "" if ok else "disjunction-left does not match"
        return "unknown rule"

    def _dp_rule(self, rule: str, c: Presentation, prem) -> str:
        if len(prem) != 1 or not isinstance(prem[0], Presentation):
            return "display move needs one presentation premise"
        p = prem[0]
        if rule == "dp":
            return "" if self._eq(c, p) else "premise not display equivalent"
        if rule == "dp-swap":
            return "" if p == c.swap() else "not a swap"
        if rule == "dp-assoc1":
            pairs = [(c, p), (p, c)]
            ok = any(
                isinstance(a.right, SObslash) and b == Presentation(STimes(a.left, a.right.left), a.right.right)
                for a, b in pairs
            )
            return "" if ok else "not a residuation move"
        ok = any(
            isinstance(a.right, STimes) and b == Presentation(SOslash(a.left, a.right.left), a.right.right)
            for a, b in [(c, p), (p, c)]
        )
        return "" if ok else "not a residuation move"

    def _cut(self, c: Presentation, prem) -> str:
        if len(prem) != 2 or not isinstance(prem[0], Stoup) or not isinstance(prem[1], Presentation):
            return "cut needs Δ |- P and a presentation"
        delta, cut_formula = prem[0].structure, prem[0].formula
        for occ, leaf in leaf_occurrences(prem[1]):
            if leaf != cut_formula:
                continue
            gamma = display(prem[1], occ).left
            if self._eq(Presentation(gamma, delta), c):
                return ""
        return "cut formula does not connect the premises"

    def _stoup_rule(self, rule: str, c: Stoup, prem) -> str:
        s, f = c.structure, c.formula
        if rule == "_R":
            ok = isinstance(f, Down) and len(prem) == 1 and self._eq(Presentation(s, negate(f.body)), prem[0])
            return "" if ok else "shift-right needs Γ ; N⊥"
        if rule in _RIGHT_RULES:
            cls, node_cls = _RIGHT_RULES[rule]
            if not (isinstance(f, cls) and isinstance(s, node_cls) and len(prem) == 2):
                return "shape mismatch"
            if not all(isinstance(p, Stoup) for p in prem):
                return "premises must be stoup judgments"
            if cls is Tensor:
                want = [Stoup(s.left, f.left), Stoup(s.right, f.right)]
            elif cls is CoLDiv:
                want = [Stoup(s.left, negate(f.left)), Stoup(s.right, f.right)]
            else:
                want = [Stoup(s.right, negate(f.right)), Stoup(s.left, f.left)]
            return "" if list(prem) == want else "premises do not match"
        if rule in ("|Rl", "|Rr"):
            if not isinstance(f, Or) or len(prem) != 1:
                return "shape mismatch"
            chosen = f.left if rule == "|Rl" else f.right
            return "" if prem[0] == Stoup(s, chosen) else "premise does not match"
        return "unknown stoup rule"
