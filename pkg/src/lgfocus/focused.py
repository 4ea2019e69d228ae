"""Strongly focused proof search over polarized structures.

Focused structures have two kinds of leaves: positive atoms, and negative
formulas standing under an implicit down-shift.  A proof alternates between
presentations, where the decision rule ``D`` picks a negative leaf to focus
on, and focused judgments ``L |-f pattern``, where the pattern (an element
of :func:`invp` of the negated focus) is matched against ``L`` by splitting
congruent nodes, identity on atoms, and a reaction rule ``R`` that returns
to presentations when the pattern is a negative leaf.

Every rule strictly shrinks the multiset of leaves, so the search needs no
loop check apart from the finite structural closure used by the
linear-distributivity variant.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

from .calculus import Variant
from .formula import (
    And,
    CoLDiv,
    CoRDiv,
    Down,
    Formula,
    LDiv,
    NegAtom,
    Or,
    Par,
    PosAtom,
    RDiv,
    Tensor,
    Up,
    is_positive,
    negate,
)
from .polarized import decorate_presentation, require_sorted
from .proof import CheckResult, Focus, FocusJudgment, ProofNode
from .structure import (
    Occurrence,
    Presentation,
    SNode,
    SOslash,
    SObslash,
    STimes,
    Side,
    Structure,
    interp_minus,
    interp_plus,
    leaf_occurrences,
    positions,
    presentation_key,
    print_structure,
    replace,
    subterm,
)

DEFAULT_MAX_VISITED = 500_000


class UniverseError(ValueError):
    """A leaf fell outside the subformula universe of the goal."""


class SearchExhausted(Exception):
    pass


# -- subformula universe -------------------------------------------------------


def sigma(n: Formula) -> frozenset[Formula]:
    """Negative formulas and atoms that focusing on ``n`` can expose."""
    match n:
        case NegAtom():
            return frozenset({n})
        case Up(body):
            return frozenset({negate(body)}) | tau(body)
        case And(l, r) | Par(l, r):
            return sigma(l) | sigma(r)
        case RDiv(m, q):
            return sigma(m) | tau(q)
        case LDiv(q, m):
            return tau(q) | sigma(m)
    raise TypeError(f"sigma expects a negative polarized formula, got {n!r}")


def tau(p: Formula) -> frozenset[Formula]:
    match p:
        case PosAtom():
            return frozenset({p})
        case Down(body):
            return frozenset({body}) | sigma(body)
        case Or(l, r) | Tensor(l, r):
            return tau(l) | tau(r)
        case CoLDiv(n, q):
            return sigma(n) | tau(q)
        case CoRDiv(q, n):
            return tau(q) | sigma(n)
    raise TypeError(f"tau expects a positive polarized formula, got {p!r}")


def up_to_atom_sign(formulas: Iterable[Formula]) -> frozenset[Formula]:
    """Identify ``~p`` with ``p``; atoms are tracked by name only."""
    return frozenset(PosAtom(f.name) if isinstance(f, NegAtom) else f for f in formulas)


@dataclass(frozen=True)
class Universe:
    """The closure of a set of negative formulas under :func:`tau` of their
    down-shifts."""

    generators: frozenset[Formula]
    closure: frozenset[Formula]

    def __contains__(self, f: Formula) -> bool:
        if isinstance(f, (PosAtom, NegAtom)):
            return PosAtom(f.name) in up_to_atom_sign(self.closure)
        return f in self.closure


def build_universe(xs: Iterable[Formula]) -> Universe:
    xs = frozenset(xs)
    for x in xs:
        if is_positive(require_sorted(x)):
            raise UniverseError(f"universe generators must be negative: {x!r}")
    closure = frozenset().union(*(tau(Down(x)) for x in xs))
    return Universe(xs, closure)


def universe_for(w: Presentation) -> Universe:
    """A universe covering every leaf of a focused presentation."""
    gens = set()
    for _, leaf in leaf_occurrences(w):
        gens.add(negate(leaf) if isinstance(leaf, PosAtom) else leaf)
    return build_universe(gens)


# -- invertible phase ----------------------------------------------------------


def _ordered_union(*groups: Iterable[Structure]) -> tuple[Structure, ...]:
    return tuple(dict.fromkeys(s for g in groups for s in g))


def invp(p: Formula) -> tuple[Structure, ...]:
    """Focused structures obtained by decomposing a positive formula with
    its invertible rules, in construction order (left operand major)."""
    match p:
        case PosAtom():
            return (p,)
        case Down(body):
            return (body,)
        case Tensor(l, r):
            return _ordered_union(STimes(a, b) for a, b in product(invp(l), invp(r)))
        case CoRDiv(l, n):
            return _ordered_union(SOslash(a, b) for a, b in product(invp(l), invp(negate(n))))
        case CoLDiv(n, r):
            return _ordered_union(SObslash(a, b) for a, b in product(invp(negate(n)), invp(r)))
        case Or(l, r):
            return _ordered_union(invp(l), invp(r))
    raise TypeError(f"invp expects a positive polarized formula, got {p!r}")


# -- displacement --------------------------------------------------------------


def displace(s: Structure, path: tuple[str, ...], other: Structure) -> Structure:
    """The structure left over, opposite the hole, once the position ``path``
    of ``s`` is displayed against ``other``."""
    for step in path:
        match s:
            case STimes(a, b):
                s, other = (a, SObslash(b, other)) if step == "L" else (b, SOslash(other, a))
            case SOslash(a, b):
                s, other = (a, STimes(b, other)) if step == "L" else (b, SObslash(other, a))
            case SObslash(a, b):
                s, other = (a, SOslash(b, other)) if step == "L" else (b, STimes(other, a))
            case _:
                raise ValueError(f"path {path} leaves the structure")
    return other


def residual(w: Presentation, occ: Occurrence) -> Structure:
    other = w.right if occ.side is Side.LEFT else w.left
    return displace(w.component(occ.side), occ.path, other)


# -- structural rewrites for the linear-distributivity variant -------------------


def _root_rewrites(s: Structure) -> Iterator[tuple[str, Structure]]:
    """Backward focused linear-distributivity steps at the root of ``s``:
    each yields the rule name and the premise structure."""
    if isinstance(s, SOslash) and isinstance(s.left, STimes):
        x, y, z = s.left.left, s.left.right, s.right
        yield "G1a", STimes(x, SOslash(y, z))
        yield "G2b", SOslash(x, SObslash(y, z))
        yield "Gcc", STimes(SOslash(x, z), y)
        yield "Gcd", SOslash(y, SOslash(z, x))
    if isinstance(s, SObslash) and isinstance(s.right, STimes):
        x, y, z = s.left, s.right.left, s.right.right
        yield "G1b", SObslash(SOslash(x, y), z)
        yield "G2a", STimes(SObslash(x, y), z)
        yield "Gca", STimes(y, SObslash(x, z))
        yield "Gcb", SObslash(SObslash(z, x), y)


FOCUSED_GRISHIN_RULES = ("G1a", "G1b", "G2a", "G2b", "Gca", "Gcb", "Gcc", "Gcd")


def rewrites(s: Structure) -> Iterator[tuple[str, Structure]]:
    """One backward structural step anywhere inside ``s``."""
    for path, sub in positions(s):
        for name, new in _root_rewrites(sub):
            yield name, replace(s, path, new)


def rewrite_closure(s: Structure) -> list[tuple[Structure, list[tuple[str, Structure]]]]:
    """Structures reachable by backward steps, with the (rule, conclusion)
    chain that reaches each, in breadth-first order."""
    found = [(s, [])]
    seen = {s}
    queue = deque(found)
    while queue:
        current, chain = queue.popleft()
        for name, nxt in rewrites(current):
            if nxt not in seen:
                seen.add(nxt)
                entry = (nxt, chain + [(name, current)])
                found.append(entry)
                queue.append(entry)
    return found


# -- search ----------------------------------------------------------------------

_SPLIT_RULE = {STimes: "split*", SOslash: "split</", SObslash: "split\\>"}


def _split_premises(left: SNode, pattern: SNode) -> list[FocusJudgment]:
    """Premises of a splitting step in rule order; for ``</`` the right
    operands come first."""
    first = FocusJudgment(left.left, pattern.left)
    second = FocusJudgment(left.right, pattern.right)
    return [second, first] if isinstance(pattern, SOslash) else [first, second]


class FocusedEngine:
    def __init__(
        self,
        variant: Variant | str = Variant.LG0,
        universe: Universe | None = None,
        max_visited: int = DEFAULT_MAX_VISITED,
    ):
        self.variant = Variant.parse(variant)
        if self.variant is Variant.CNL_COMPACT:
            self.variant = Variant.CNL
        self.universe = universe
        self.max_visited = max_visited
        self.visited = 0
        self._pres_memo: dict[str, ProofNode | None] = {}
        self._focus_memo: dict[tuple[str, str], ProofNode | None] = {}
        self._enum_memo: dict = {}

    def _tick(self) -> None:
        self.visited += 1
        if self.visited > self.max_visited:
            raise SearchExhausted

    def _check_leaf(self, leaf: Formula) -> None:
        if self.universe is not None and leaf not in self.universe:
            raise UniverseError(f"leaf outside the universe: {leaf!r}")

    def decisions(self, w: Presentation) -> Iterator[tuple[Focus, Structure, Structure]]:
        """Every D-rule choice: (focus, residual structure, pattern), in the
        order left pre-order, right pre-order, then invp index."""
        for occ, leaf in leaf_occurrences(w):
            if isinstance(leaf, PosAtom):
                continue
            self._check_leaf(leaf)
            rest = residual(w, occ)
            for k, pattern in enumerate(invp(negate(leaf))):
                yield Focus(occ, k), rest, pattern

    def _left_candidates(self, left: Structure) -> list[tuple[Structure, list]]:
        if self.variant is Variant.LGI:
            return rewrite_closure(left)
        return [(left, [])]

    def _congruent(self, left: Structure, pattern: Structure) -> bool:
        if self.variant is Variant.CNL:
            return isinstance(left, SNode) and isinstance(pattern, SNode)
        return isinstance(left, SNode) and type(left) is type(pattern)

    # first proof

    def prove_goal(self, w: Presentation) -> ProofNode | None:
        key = presentation_key(w)
        if key in self._pres_memo:
            return self._pres_memo[key]
        self._tick()
        proof = None
        for focus, rest, pattern in self.decisions(w):
            sub = self.prove_focus(rest, pattern)
            if sub is not None:
                proof = ProofNode("D", w, (sub,), focus=focus)
                break
        self._pres_memo[key] = proof
        return proof

    def prove_focus(self, left: Structure, pattern: Structure) -> ProofNode | None:
        key = (print_structure(left), print_structure(pattern))
        if key in self._focus_memo:
            return self._focus_memo[key]
        self._tick()
        proof = self._prove_focus(left, pattern)
        self._focus_memo[key] = proof
        return proof

    def _prove_focus(self, left: Structure, pattern: Structure) -> ProofNode | None:
        judgment = FocusJudgment(left, pattern)
        if isinstance(pattern, PosAtom):
            return ProofNode("I", judgment) if left == pattern else None
        if not isinstance(pattern, SNode):
            subs = []
            for sigma_ in invp(negate(pattern)):
                sub = self.prove_goal(Presentation(left, sigma_))
                if sub is None:
                    return None
                subs.append(sub)
            return ProofNode("R", judgment, tuple(subs))
        for candidate, chain in self._left_candidates(left):
            if not self._congruent(candidate, pattern):
                continue
            subs = []
            for premise in _split_premises(candidate, pattern):
                sub = self.prove_focus(premise.left, premise.pattern)
                if sub is None:
                    break
                subs.append(sub)
            else:
                node = ProofNode(_SPLIT_RULE[type(pattern)], FocusJudgment(candidate, pattern), tuple(subs))
                for name, conclusion in reversed(chain):
                    node = ProofNode(name, FocusJudgment(conclusion, pattern), (node,))
                return node
        return None

    # all proofs

    def enumerate_goal(self, w: Presentation, cap: int) -> list[ProofNode]:
        key = ("p", presentation_key(w), cap)
        if key not in self._enum_memo:
            self._tick()
            proofs: list[ProofNode] = []
            for focus, rest, pattern in self.decisions(w):
                for sub in self.enumerate_focus(rest, pattern, cap - len(proofs)):
                    proofs.append(ProofNode("D", w, (sub,), focus=focus))
                if len(proofs) >= cap:
                    break
            self._enum_memo[key] = proofs[:cap]
        return self._enum_memo[key]

    def enumerate_focus(self, left: Structure, pattern: Structure, cap: int) -> list[ProofNode]:
        key = ("f", print_structure(left), print_structure(pattern), cap)
        if key not in self._enum_memo:
            self._tick()
            self._enum_memo[key] = self._enumerate_focus(left, pattern, cap)
        return self._enum_memo[key]

    def _enumerate_focus(self, left: Structure, pattern: Structure, cap: int) -> list[ProofNode]:
        judgment = FocusJudgment(left, pattern)
        if isinstance(pattern, PosAtom):
            return [ProofNode("I", judgment)] if left == pattern else []
        if not isinstance(pattern, SNode):
            options = [self.enumerate_goal(Presentation(left, s), cap) for s in invp(negate(pattern))]
            return [ProofNode("R", judgment, combo) for combo in _capped_product(options, cap)]
        proofs: list[ProofNode] = []
        for candidate, chain in self._left_candidates(left):
            if not self._congruent(candidate, pattern):
                continue
            options = [self.enumerate_focus(p.left, p.pattern, cap) for p in _split_premises(candidate, pattern)]
            for combo in _capped_product(options, cap - len(proofs)):
                node = ProofNode(_SPLIT_RULE[type(pattern)], FocusJudgment(candidate, pattern), combo)
                for name, conclusion in reversed(chain):
                    node = ProofNode(name, FocusJudgment(conclusion, pattern), (node,))
                proofs.append(node)
            if len(proofs) >= cap:
                break
        return proofs[:cap]


def _capped_product(options: list[list[ProofNode]], cap: int) -> list[tuple[ProofNode, ...]]:
    out = []
    if cap <= 0:
        return out
    for combo in product(*options):
        out.append(combo)
        if len(out) >= cap:
            break
    return out


# -- entry points ------------------------------------------------------------------


class Status(enum.Enum):
    PROVABLE = "PROVABLE"
    UNPROVABLE = "UNPROVABLE"
    INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class FocusedResult:
    status: Status
    proof: ProofNode | None
    goals: tuple[Presentation, ...]
    visited: int = 0

    @property
    def provable(self) -> bool:
        return self.status is Status.PROVABLE


def goals_of(decorated: Presentation) -> tuple[Presentation, ...]:
    """Focused presentations left after the invertible phase."""
    return tuple(
        Presentation(a, b)
        for a in invp(interp_plus(decorated.left))
        for b in invp(interp_plus(decorated.right))
    )


def universe_of(decorated: Presentation) -> Universe:
    return build_universe({interp_minus(decorated.left), interp_minus(decorated.right)})


def prove_polarized(decorated: Presentation, variant: Variant | str = Variant.LG0, max_visited: int = DEFAULT_MAX_VISITED) -> FocusedResult:
    """Focused provability of a presentation whose leaves are positive
    polarized formulas."""
    universe = universe_of(decorated)
    engine = FocusedEngine(variant, universe, max_visited)
    goals = goals_of(decorated)
    for g in goals:
        for _, leaf in leaf_occurrences(g):
            if leaf not in universe:
                raise UniverseError(f"goal leaf outside the universe: {leaf!r}")
    proofs = []
    try:
        for g in goals:
            sub = engine.prove_goal(g)
            if sub is None:
                return FocusedResult(Status.UNPROVABLE, None, goals, engine.visited)
            proofs.append(sub)
    except SearchExhausted:
        return FocusedResult(Status.INDETERMINATE, None, goals, engine.visited)
    return FocusedResult(Status.PROVABLE, ProofNode("invp", decorated, tuple(proofs)), goals, engine.visited)


def prove_presentation(w: Presentation, variant: Variant | str = Variant.LG0, max_visited: int = DEFAULT_MAX_VISITED) -> FocusedResult:
    return prove_polarized(decorate_presentation(w), variant, max_visited)


def prove_focused(w: Presentation, variant: Variant | str = Variant.LG0, max_visited: int = DEFAULT_MAX_VISITED) -> ProofNode | None:
    """First focused proof of a focused presentation, or None."""
    engine = FocusedEngine(variant, universe_for(w), max_visited)
    return engine.prove_goal(w)


def enumerate_proofs(w: Presentation, variant: Variant | str = Variant.LG0, cap: int = 1000, max_visited: int = DEFAULT_MAX_VISITED) -> list[ProofNode]:
    """All focused proofs of a focused presentation, at most ``cap``."""
    engine = FocusedEngine(variant, universe_for(w), max_visited)
    return engine.enumerate_goal(w, cap)


def focused_presentation(decorated: Presentation) -> Presentation:
    """The single focused goal of a decorated presentation whose leaves are
    atoms or down-shifts; raises if the invertible phase splits it."""
    goals = goals_of(decorated)
    if len(goals) != 1:
        raise ValueError(f"presentation has {len(goals)} focused goals")
    return goals[0]


# -- checking -------------------------------------------------------------------


def check_focused(proof: ProofNode, variant: Variant | str = Variant.LG0) -> CheckResult:
    variant = Variant.parse(variant)
    if variant is Variant.CNL_COMPACT:
        variant = Variant.CNL
    return _check(proof, variant, ())


def _check(node: ProofNode, variant: Variant, path: tuple[int, ...]) -> CheckResult:
    reason = _local(node, variant)
    if reason:
        return CheckResult(False, path, f"{node.rule}: {reason}")
    for i, sub in enumerate(node.premises):
        result = _check(sub, variant, path + (i,))
        if not result:
            return result
    return CheckResult(True)


def _local(node: ProofNode, variant: Variant) -> str:
    c = node.conclusion
    prem = [p.conclusion for p in node.premises]
    if node.rule == "invp":
        return "" if isinstance(c, Presentation) and tuple(prem) == goals_of(c) else "goals do not match"
    if node.rule == "D":
        if not isinstance(c, Presentation) or node.focus is None or len(prem) != 1:
            return "malformed decision"
        occ = node.focus.occurrence
        leaf = subterm(c.component(occ.side), occ.path)
        if isinstance(leaf, (SNode, PosAtom)):
            return "focus is not a negative leaf"
        patterns = invp(negate(leaf))
        k = node.focus.invp_index
        if not 0 <= k < len(patterns):
            return "invp index out of range"
        return "" if prem[0] == FocusJudgment(residual(c, occ), patterns[k]) else "premise mismatch"
    if not isinstance(c, FocusJudgment):
        return "expected a focused judgment"
    left, pattern = c.left, c.pattern
    if node.rule == "I":
        return "" if not prem and isinstance(pattern, PosAtom) and left == pattern else "identity mismatch"
    if node.rule == "R":
        if isinstance(pattern, (SNode, PosAtom)):
            return "reaction needs a negative pattern"
        want = [Presentation(left, s) for s in invp(negate(pattern))]
        return "" if prem == want else "premise mismatch"
    if node.rule in _SPLIT_RULE.values():
        if not isinstance(pattern, SNode) or _SPLIT_RULE[type(pattern)] != node.rule:
            return "pattern does not match rule"
        congruent = isinstance(left, SNode) and (variant is Variant.CNL or type(left) is type(pattern))
        if not congruent:
            return "structures are not congruent"
        return "" if prem == _split_premises(left, pattern) else "premise mismatch"
    if node.rule in FOCUSED_GRISHIN_RULES:
        if variant is not Variant.LGI or len(prem) != 1 or not isinstance(prem[0], FocusJudgment):
            return "structural step not available"
        ok = prem[0].pattern == pattern and (node.rule, prem[0].left) in set(rewrites(left))
        return "" if ok else "rewrite mismatch"
    return "unknown rule"


# -- closure properties, for testing -------------------------------------------------


def display_closure_instances(pi: Structure, sg: Structure, up: Structure) -> list[tuple[str, Presentation, Presentation]]:
    """(name, hypothesis, consequence) for the three display-closure
    implications of focused provability."""
    return [
        ("swap", Presentation(sg, pi), Presentation(pi, sg)),
        ("product-left", Presentation(STimes(pi, sg), up), Presentation(pi, SObslash(sg, up))),
        ("product-right", Presentation(pi, STimes(sg, up)), Presentation(SOslash(pi, sg), up)),
    ]


def grishin_closure_instances(g1: Structure, g2: Structure, d1: Structure, d2: Structure) -> list[tuple[str, Presentation, Presentation]]:
    """(name, hypothesis, consequence) for admissibility of the three
    linear-distributivity rules in focused provability."""
    conclusion = Presentation(STimes(g1, g2), STimes(d2, d1))
    return [
        ("G1", Presentation(SOslash(g2, d2), SOslash(d1, g1)), conclusion),
        ("G2", Presentation(SObslash(d1, g1), SObslash(g2, d2)), conclusion),
        ("Gc", Presentation(SOslash(d2, g1), SObslash(d1, g2)), conclusion),
    ]
