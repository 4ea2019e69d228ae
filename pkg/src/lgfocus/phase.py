"""Phase-space semantics for polarized formulas, soundness checking and
exhaustive countermodel search over small carriers.

A phase space is a finite carrier ``range(n)`` with three binary operations
and a symmetric orthogonality relation ``bot`` satisfying two residuation
laws; the logic variants add frame conditions.  Formulas denote facts,
the sets closed under double orthogonal.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping

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
    atoms,
)
from .polarized import decorate_presentation
from .structure import Presentation, interp_minus, interp_plus, leaf_occurrences

MAX_CARRIER = 6

Table = tuple[tuple[int, ...], ...]
Subset = frozenset[int]


@dataclass(frozen=True)
class PhaseSpace:
    n: int
    tensor: Table
    oslash: Table
    obslash: Table
    bot: frozenset[tuple[int, int]]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_CARRIER:
            raise ValueError(f"carrier size must be between 1 and {MAX_CARRIER}")
        for name in ("tensor", "oslash", "obslash"):
            table = getattr(self, name)
            if len(table) != self.n or any(len(row) != self.n for row in table):
                raise ValueError(f"{name} table must be {self.n}x{self.n}")
            if any(not 0 <= v < self.n for row in table for v in row):
                raise ValueError(f"{name} table has entries outside the carrier")
        if any(not (0 <= x < self.n and 0 <= y < self.n) for x, y in self.bot):
            raise ValueError("bot mentions elements outside the carrier")

    @classmethod
    def from_product(cls, n: int, tensor: Table, bot: Iterable[tuple[int, int]]) -> "PhaseSpace":
        """The collapsed form used for the classical non-associative variant:
        all three operations coincide."""
        tensor = tuple(tuple(r) for r in tensor)
        return cls(n, tensor, tensor, tensor, frozenset(bot))

    @property
    def carrier(self) -> Subset:
        return frozenset(range(self.n))

    def orth(self, x: int, y: int) -> bool:
        return (x, y) in self.bot

    def perp(self, subset: Iterable[int]) -> Subset:
        subset = tuple(subset)
        return frozenset(x for x in range(self.n) if all((x, y) in self.bot for y in subset))

    def closure(self, subset: Iterable[int]) -> Subset:
        return self.perp(self.perp(subset))

    def is_fact(self, subset: Iterable[int]) -> bool:
        subset = frozenset(subset)
        return self.closure(subset) == subset

    @cached_property
    def facts(self) -> tuple[Subset, ...]:
        found = {self.closure(s) for s in _subsets(self.n)}
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    def _lift(self, table: Table, a: Subset, b: Subset) -> Subset:
        return self.perp({table[x][y] for x in self.perp(a) for y in self.perp(b)})

    def times(self, a: Subset, b: Subset) -> Subset:
        return self._lift(self.tensor, a, b)

    def larrow(self, a: Subset, b: Subset) -> Subset:
        return self._lift(self.oslash, a, b)

    def rarrow(self, a: Subset, b: Subset) -> Subset:
        return self._lift(self.obslash, a, b)

    # -- frame conditions -------------------------------------------------

    def violations(self, variant: Variant | str = Variant.LG0) -> list[str]:
        variant = Variant.parse(variant)
        el = range(self.n)
        o, t, s, b = self.orth, self.tensor, self.oslash, self.obslash
        out = []
        for x, y in product(el, el):
            if o(x, y) != o(y, x):
                out.append(f"bot not symmetric at ({x},{y})")
        for x, y, z in product(el, el, el):
            if o(t[x][y], z) != o(x, b[y][z]):
                out.append(f"product/right residuation fails at ({x},{y},{z})")
            if o(x, t[y][z]) != o(s[x][y], z):
                out.append(f"product/left residuation fails at ({x},{y},{z})")
        if variant is Variant.LGI:
            for x, y, u, v in product(el, el, el, el):
                if not o(t[x][y], t[u][v]):
                    if o(s[y][u], s[v][x]):
                        out.append(f"G1 fails at ({x},{y},{u},{v})")
                    if o(b[v][x], b[y][u]):
                        out.append(f"G2 fails at ({x},{y},{u},{v})")
                    if o(s[u][x], b[v][y]):
                        out.append(f"Gc fails at ({x},{y},{u},{v})")
        if variant in (Variant.CNL, Variant.CNL_COMPACT):
            for x, y, z in product(el, el, el):
                if not o(s[x][y], z) == o(t[x][y], z) == o(b[x][y], z):
                    out.append(f"CNL identification fails at ({x},{y},{z})")
        return out

    def is_valid(self, variant: Variant | str = Variant.LG0) -> bool:
        return not self.violations(variant)


def _subsets(n: int) -> Iterator[Subset]:
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)


@dataclass(frozen=True)
class Model:
    space: PhaseSpace
    valuation: Mapping[str, Subset] = field(default_factory=dict)

    def value(self, f: Formula) -> Subset:
        """Denotation of a polarized formula."""
        sp = self.space
        match f:
            case PosAtom(name) | NegAtom(name):
                if name not in self.valuation:
                    raise KeyError(f"atom {name!r} has no value")
                return self.valuation[name]
            case Tensor(p, q):
                return sp.times(self.value(p), self.value(q))
            case Par(m, n):
                return sp.times(self.value(n), self.value(m))
            case CoRDiv(p, n):
                return sp.larrow(self.value(p), self.value(n))
            case LDiv(q, m):
                return sp.larrow(self.value(m), self.value(q))
            case CoLDiv(n, p):
                return sp.rarrow(self.value(n), self.value(p))
            case RDiv(m, q):
                return sp.rarrow(self.value(q), self.value(m))
            case Or(a, b) | And(a, b):
                return self.value(a) & self.value(b)
            case Down(body) | Up(body):
                return sp.perp(self.value(body))
        raise TypeError(f"not a polarized formula: {f!r}")

    def valuation_is_factual(self) -> bool:
        return all(self.space.is_fact(v) for v in self.valuation.values())

    # -- JSON ---------------------------------------------------------------

    def to_json_data(self) -> dict:
        sp = self.space
        return {
            "n": sp.n,
            "tensor": [list(r) for r in sp.tensor],
            "oslash": [list(r) for r in sp.oslash],
            "obslash": [list(r) for r in sp.obslash],
            "bot": sorted([list(p) for p in sp.bot]),
            "valuation": {k: sorted(v) for k, v in sorted(self.valuation.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_data(), indent=2)

    @classmethod
    def from_json_data(cls, data: dict) -> "Model":
        n = data["n"]
        tables = [tuple(tuple(r) for r in data[k]) for k in ("tensor", "oslash", "obslash")]
        space = PhaseSpace(n, *tables, frozenset(tuple(p) for p in data["bot"]))
        valuation = {k: frozenset(v) for k, v in data.get("valuation", {}).items()}
        return cls(space, valuation)

    @classmethod
    def from_json(cls, text: str) -> "Model":
        return cls.from_json_data(json.loads(text))


# -- soundness -------------------------------------------------------------------


def inclusions(model: Model, decorated: Presentation) -> tuple[bool, bool, bool, bool]:
    """The four equivalent readings of a decorated presentation being valid
    in ``model``."""
    gm, dm = interp_minus(decorated.left), interp_minus(decorated.right)
    gp, dp = interp_plus(decorated.left), interp_plus(decorated.right)
    v = model.value
    return (
        v(Down(gm)) <= v(dp),
        v(Down(dm)) <= v(gp),
        v(Up(gp)) <= v(dm),
        v(Up(dp)) <= v(gm),
    )


def soundness_check(model: Model, decorated: Presentation) -> bool:
    gm, dp = interp_minus(decorated.left), interp_plus(decorated.right)
    return model.value(Down(gm)) <= model.value(dp)


def presentation_atoms(w: Presentation) -> list[str]:
    return sorted(set().union(*(atoms(leaf) for _, leaf in leaf_occurrences(w))))


def valuations(space: PhaseSpace, names: list[str]) -> Iterator[dict[str, Subset]]:
    for choice in product(space.facts, repeat=len(names)):
        yield dict(zip(names, choice))


# -- enumerating spaces -----------------------------------------------------------


def _residual_candidates(n: int, bot: frozenset, tensor: Table):
    """For each (y, z), the elements w with (x, w) in bot iff (x*y, z) in bot;
    and for each (x, y), the w with (w, z) in bot iff (x, y*z) in bot."""
    el = range(n)
    right = [[tuple(w for w in el if all(((x, w) in bot) == ((tensor[x][y], z) in bot) for x in el))
              for z in el] for y in el]
    left = [[tuple(w for w in el if all(((w, z) in bot) == ((x, tensor[y][z]) in bot) for z in el))
             for y in el] for x in el]
    return left, right


def _symmetric_relations(n: int) -> Iterator[frozenset]:
    pairs = [(x, y) for x in range(n) for y in range(x, n)]
    for mask in range(1 << len(pairs)):
        rel = set()
        for i, (x, y) in enumerate(pairs):
            if mask >> i & 1:
                rel |= {(x, y), (y, x)}
        yield frozenset(rel)


def _tables(n: int) -> Iterator[Table]:
    for flat in product(range(n), repeat=n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def _grid(flat, n):
    return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


@lru_cache(maxsize=None)
def enumerate_spaces(n: int, variant: Variant = Variant.LG0) -> tuple[PhaseSpace, ...]:
    """Every valid space on ``range(n)``.  Practical for ``n <= 2``."""
    variant = Variant.parse(variant)
    found = []
    for bot in _symmetric_relations(n):
        for tensor in _tables(n):
            left, right = _residual_candidates(n, bot, tensor)
            lefts = [c for row in left for c in row]
            rights = [c for row in right for c in row]
            if not all(lefts) or not all(rights):
                continue
            for os_flat in product(*lefts):
                for ob_flat in product(*rights):
                    space = PhaseSpace(n, tensor, _grid(os_flat, n), _grid(ob_flat, n), bot)
                    if space.is_valid(variant):
                        found.append(space)
    return tuple(found)


def _compatible_vectors(n: int, bot: frozenset) -> tuple[list, list]:
    """Rows and columns of a product table for which both residual
    operations can exist: every orthogonal set the product induces must be
    the orthogonal set of some element."""
    el = range(n)
    available = {frozenset(y for y in el if (x, y) in bot) for x in el}
    rows = [v for v in product(el, repeat=n)
            if all(frozenset(z for z in el if (x, v[z]) in bot) in available for x in el)]
    cols = [v for v in product(el, repeat=n)
            if all(frozenset(x for x in el if (v[x], z) in bot) in available for z in el)]
    return rows, cols


def sample_space(n: int, variant: Variant | str, rng: random.Random, tries: int = 2000) -> PhaseSpace | None:
    """A random valid space: draw ``bot``, then a product table from rows and
    columns compatible with residuation, then residual operations among the
    admissible elements; reject on the variant's frame conditions."""
    variant = Variant.parse(variant)
    el = range(n)
    pairs = [(x, y) for x in el for y in range(x, n)]
    for _ in range(tries):
        bot = set()
        for x, y in pairs:
            if rng.random() < 0.5:
                bot |= {(x, y), (y, x)}
        bot = frozenset(bot)
        rows, cols = _compatible_vectors(n, bot)
        if not rows or not cols:
            continue
        cols = set(cols)
        for _ in range(50):
            tensor = tuple(rng.choice(rows) for _ in el)
            if all(tuple(tensor[x][y] for x in el) in cols for y in el):
                break
        else:
            continue
        left, right = _residual_candidates(n, bot, tensor)
        oslash = tuple(tuple(rng.choice(c) for c in row) for row in left)
        obslash = tuple(tuple(rng.choice(right[y][z]) for z in el) for y in el)
        space = PhaseSpace(n, tensor, oslash, obslash, bot)
        if space.is_valid(variant):
            return space
    return None


def fact_algebra(space: PhaseSpace) -> tuple:
    """Everything a valuation can observe: the facts with orthogonal
    complement and the three lifted operations restricted to facts."""
    facts = space.facts
    index = {f: i for i, f in enumerate(facts)}
    ops = tuple(
        tuple(index[op(a, b)] for a in facts for b in facts)
        for op in (space.times, space.larrow, space.rarrow)
    )
    return (tuple(tuple(sorted(f)) for f in facts), tuple(index[space.perp(f)] for f in facts), ops)


def candidate_spaces(variant: Variant | str, max_n: int = 2, seed: int = 0, samples: int = 200) -> Iterator[PhaseSpace]:
    """Exhaustively every space up to size 2, then seeded samples of larger
    sizes up to ``max_n``; spaces with the same fact algebra are skipped."""
    variant = Variant.parse(variant)
    if not 1 <= max_n <= MAX_CARRIER:
        raise ValueError(f"max_n must be between 1 and {MAX_CARRIER}")
    seen = set()

    def fresh(space):
        sig = fact_algebra(space)
        if sig in seen:
            return False
        seen.add(sig)
        return True

    for n in range(1, min(max_n, 2) + 1):
        yield from filter(fresh, enumerate_spaces(n, variant))
    rng = random.Random(seed)
    for n in range(3, max_n + 1):
        for _ in range(samples):
            space = sample_space(n, variant, rng)
            if space is not None and fresh(space):
                yield space


def countermodel_search(
    w: Presentation,
    variant: Variant | str = Variant.LG0,
    max_n: int = 2,
    seed: int = 0,
    samples: int = 200,
) -> Model | None:
    """A model of the variant in which the decorated presentation fails,
    or None if the search space holds none."""
    variant = Variant.parse(variant)
    decorated = decorate_presentation(w)
    names = presentation_atoms(w)
    for space in candidate_spaces(variant, max_n, seed, samples):
        for val in valuations(space, names):
            model = Model(space, val)
            if not soundness_check(model, decorated):
                return model
    return None


def certify_countermodel(model: Model, w: Presentation, variant: Variant | str) -> bool:
    """Independent re-check: valid frame, factual valuation, and all four
    readings of the presentation fail."""
    decorated = decorate_presentation(w)
    return (
        model.space.is_valid(variant)
        and model.valuation_is_factual()
        and not any(inclusions(model, decorated))
    )
