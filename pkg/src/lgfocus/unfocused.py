"""Cut-free backward proof search in the display sequent calculus.

The search treats a presentation up to its display class, so display moves
never appear as explicit steps.  Every logical rule removes one connective,
which makes the recursion well-founded; the structural rules of the
linear-distributivity extension keep the connective count fixed, and their
effect is explored as a finite reachability closure at each step.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .calculus import (
    GRISHIN_RULES,
    Variant,
    equivalence_class,
    equivalent,
    grishin_steps,
    normalize,
)
from .formula import (
    And,
    CoLDiv,
    CoRDiv,
    LDiv,
    NegAtom,
    Or,
    Par,
    PosAtom,
    RDiv,
    Tensor,
    negate,
    subformulas,
)
from .proof import CheckResult, ProofNode
from .structure import (
    Hole,
    Occurrence,
    Presentation,
    SNode,
    SOslash,
    SObslash,
    STimes,
    Side,
    display,
    is_leaf,
    leaves,
    positions,
    presentation_key,
)

DEFAULT_MAX_VISITED = 200_000
MAIN_RIGHT = Occurrence(Side.RIGHT, ())


class Status(enum.Enum):
    PROVABLE = "PROVABLE"
    UNPROVABLE = "UNPROVABLE"
    INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class SearchResult:
    status: Status
    proof: ProofNode | None = None
    visited: int = 0

    @property
    def provable(self) -> bool:
        return self.status is Status.PROVABLE


class SearchExhausted(Exception):
    """Raised internally when the visited-state budget runs out."""


_COMPACT_CONNECTIVES = (PosAtom, NegAtom, Tensor, Par, And, Or)


def check_compact(w: Presentation) -> None:
    """Reject input outside the product-only fragment."""
    for side in (w.left, w.right):
        for _, leaf in leaves(side):
            bad = [f for f in subformulas(leaf) if not isinstance(f, _COMPACT_CONNECTIVES)]
            if bad:
                raise ValueError(f"cnl-compact admits only * + & | formulas, found {type(bad[0]).__name__}")
        if any(isinstance(s, SNode) and not isinstance(s, STimes) for _, s in positions(side)):
            raise ValueError("cnl-compact admits only product structures")


def rule_instances(m: Presentation, variant: Variant) -> Iterator[tuple[str, list[Presentation]]]:
    """Backward applications of the logical rules whose main formula is the
    right component of ``m``; yields (rule name, premises)."""
    rest, a = m.left, m.right
    if isinstance(a, (SNode, Hole)):
        return
    if is_leaf(rest) and rest == negate(a):
        yield "Ax", []
    loose = variant is Variant.CNL
    match a:
        case Tensor(x, y):
            yield "*", [Presentation(rest, STimes(x, y))]
        case CoLDiv(y, x):
            yield "\\>", [Presentation(rest, SObslash(negate(y), x))]
        case CoRDiv(x, y):
            yield "</", [Presentation(rest, SOslash(x, negate(y)))]
        case Or(x, y):
            yield "|", [Presentation(rest, x), Presentation(rest, y)]
        case And(x, y):
            yield "&l", [Presentation(rest, x)]
            yield "&r", [Presentation(rest, y)]
        case Par(x, y):
            if isinstance(rest, STimes) or (loose and isinstance(rest, SNode)):
                delta, gamma = rest.left, rest.right
                yield "+", [Presentation(gamma, x), Presentation(delta, y)]
        case RDiv(x, y):
            if isinstance(rest, SObslash) or (loose and isinstance(rest, SNode)):
                delta, gamma = rest.left, rest.right
                yield "/", [Presentation(delta, negate(y)), Presentation(gamma, x)]
        case LDiv(y, x):
            if isinstance(rest, SOslash) or (loose and isinstance(rest, SNode)):
                gamma, delta = rest.left, rest.right
                yield "\\", [Presentation(delta, negate(y)), Presentation(gamma, x)]


class UnfocusedProver:
    """Exhaustive memoized search; also the reference oracle for the
    focused engine."""

    def __init__(self, variant: Variant | str = Variant.LG0, max_visited: int = DEFAULT_MAX_VISITED):
        self.variant = Variant.parse(variant)
        self.max_visited = max_visited
        self.visited = 0
        self._memo: dict[str, ProofNode | None] = {}

    def prove(self, w: Presentation) -> SearchResult:
        if self.variant is Variant.CNL_COMPACT:
            check_compact(w)
        try:
            proof = self._search(w)
        except SearchExhausted:
            return SearchResult(Status.INDETERMINATE, None, self.visited)
        status = Status.PROVABLE if proof is not None else Status.UNPROVABLE
        return SearchResult(status, proof, self.visited)

    def _tick(self) -> None:
        self.visited += 1
        if self.visited > self.max_visited:
            raise SearchExhausted

    def _search(self, w: Presentation) -> ProofNode | None:
        members = equivalence_class(w, self.variant)
        key = min(presentation_key(m) for m in members)
        if key in self._memo:
            return self._memo[key]
        self._tick()
        proof = None
        for chain, state_members in self._reach(members):
            proof = self._first_rule(state_members)
            if proof is not None:
                for rule, conclusion in reversed(chain):
                    proof = ProofNode(rule, conclusion, (proof,))
                break
        self._memo[key] = proof
        return proof

    def _first_rule(self, members: list[Presentation]) -> ProofNode | None:
        for m in members:
            for rule, premises in rule_instances(m, self.variant):
                subproofs = []
                for premise in premises:
                    sub = self._search(normalize(premise, self.variant))
                    if sub is None:
                        break
                    subproofs.append(sub)
                else:
                    return ProofNode(rule, m, tuple(subproofs), MAIN_RIGHT)
        return None

    def _reach(self, members: list[Presentation]):
        """Classes reachable by backward structural steps, breadth first,
        each with the chain of (rule, conclusion) steps leading to it."""
        yield [], members
        if self.variant is not Variant.LGI:
            return
        start = min(presentation_key(m) for m in members)
        seen = {start}
        queue = deque([([], members)])
        while queue:
            chain, current = queue.popleft()
            for m in current:
                for rule, premise in grishin_steps(m):
                    nxt = equivalence_class(premise, self.variant)
                    key = min(presentation_key(x) for x in nxt)
                    if key in seen:
                        continue
                    seen.add(key)
                    self._tick()
                    step = chain + [(rule, m)]
                    yield step, nxt
                    queue.append((step, nxt))


def prove(w: Presentation, variant: Variant | str = Variant.LG0, max_visited: int = DEFAULT_MAX_VISITED) -> SearchResult:
    return UnfocusedProver(variant, max_visited).prove(w)


def check(proof: ProofNode, variant: Variant | str = Variant.LG0) -> CheckResult:
    """Verify every node of an unfocused proof, display moves modulo."""
    return _check(proof, Variant.parse(variant), ())


def proves(proof: ProofNode, w: Presentation, variant: Variant | str = Variant.LG0) -> bool:
    variant = Variant.parse(variant)
    return bool(check(proof, variant)) and equivalent(proof.conclusion, w, variant)


def _check(node: ProofNode, variant: Variant, path: tuple[int, ...]) -> CheckResult:
    if not isinstance(node.conclusion, Presentation):
        return CheckResult(False, path, "conclusion is not a presentation")
    premises = [p.conclusion for p in node.premises]
    if node.rule in GRISHIN_RULES:
        ok = variant is Variant.LGI and len(premises) == 1 and any(
            name == node.rule and equivalent(prem, premises[0], variant)
            for m in equivalence_class(node.conclusion, variant)
            for name, prem in grishin_steps(m)
        )
    else:
        if node.main is not None:
            candidates = [normalize(display(node.conclusion, node.main), variant)]
        else:
            candidates = equivalence_class(node.conclusion, variant)
        ok = any(
            name == node.rule
            and len(expected) == len(premises)
            and all(isinstance(p, Presentation) and equivalent(e, p, variant) for e, p in zip(expected, premises))
            for m in candidates
            for name, expected in rule_instances(m, variant)
        )
    if not ok:
        return CheckResult(False, path, f"rule {node.rule!r} does not fit its conclusion and premises")
    for i, sub in enumerate(node.premises):
        result = _check(sub, variant, path + (i,))
        if not result:
            return result
    return CheckResult(True)
