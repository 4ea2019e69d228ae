import pytest
from hypothesis import given, settings

from lgfocus.calculus import Variant
from lgfocus.formula import Down, NegAtom, Or, PosAtom, Tensor, Up, negate, parse_formula, polarity, subformulas
from lgfocus.polarized import (
    SortError,
    check_pol,
    decorate,
    decorate_presentation,
    decorate_structure,
    forget,
    is_well_sorted,
    parse_pol_formula,
    parse_pol_presentation,
    pol_negate,
)
from lgfocus.proof import ProofNode, Stoup
from lgfocus.structure import Presentation, SOslash, SObslash, STimes, parse_presentation

from strategies import any_polarized, formulas

# (unpolarized, decorated) for each connective and each polarity of its
# operands; "a" and "b" stand for positive operands, "~a" and "~b" for
# negative ones
DECORATION_TABLE = [
    ("a * b", "a * b"),
    ("a * ~b", "a * _~b"),
    ("~a * b", "_~a * b"),
    ("~a * ~b", "_~a * _~b"),
    ("a </ b", "a </ ^b"),
    ("a </ ~b", "a </ ~b"),
    ("~a </ b", "_~a </ ^b"),
    ("~a </ ~b", "_~a </ ~b"),
    ("b \\> a", "^b \\> a"),
    ("~b \\> a", "~b \\> a"),
    ("b \\> ~a", "^b \\> _~a"),
    ("~b \\> ~a", "~b \\> _~a"),
    ("a | b", "a | b"),
    ("a | ~b", "a | _~b"),
    ("~a | b", "_~a | b"),
    ("~a | ~b", "_~a | _~b"),
    ("a + b", "^a + ^b"),
    ("a + ~b", "^a + ~b"),
    ("~a + b", "~a + ^b"),
    ("~a + ~b", "~a + ~b"),
    ("b \\ a", "b \\ ^a"),
    ("~b \\ a", "_~b \\ ^a"),
    ("b \\ ~a", "b \\ ~a"),
    ("~b \\ ~a", "_~b \\ ~a"),
    ("a / b", "^a / b"),
    ("a / ~b", "^a / _~b"),
    ("~a / b", "~a / b"),
    ("~a / ~b", "~a / _~b"),
    ("a & b", "^a & ^b"),
    ("a & ~b", "^a & ~b"),
    ("~a & b", "~a & ^b"),
    ("~a & ~b", "~a & ~b"),
]


@pytest.mark.parametrize("plain, decorated", DECORATION_TABLE)
def test_decoration_table(plain, decorated):
    assert decorate(parse_formula(plain)) == parse_pol_formula(decorated)


def test_negating_shifts():
    assert pol_negate(Down(NegAtom("p"))) == Up(PosAtom("p"))
    assert pol_negate(Tensor(PosAtom("p"), PosAtom("q"))) == parse_pol_formula("~q + ~p")


def test_pol_negate_rejects_ill_sorted_input():
    with pytest.raises(SortError):
        pol_negate(Tensor(NegAtom("p"), PosAtom("q")))
    with pytest.raises(SortError):
        parse_pol_formula("^~p")


def test_leaf_decoration():
    assert decorate_structure(NegAtom("p")) == Down(NegAtom("p"))
    assert decorate_structure(PosAtom("p")) == PosAtom("p")
    assert decorate_structure(STimes(PosAtom("p"), NegAtom("p"))) == STimes(PosAtom("p"), Down(NegAtom("p")))


def test_golden_sequent_decorates_to_the_focused_goal():
    w = parse_presentation("((p / q) . q) . (p \\ r) ; ~r")
    assert decorate_presentation(w) == parse_pol_presentation("(_(^p / q) . q) . _(p \\ ^r) ; _~r")


def test_forget_erases_shifts():
    assert forget(parse_pol_formula("^p / q")) == parse_formula("p / q")


@settings(max_examples=500)
@given(formulas())
def test_decoration_commutes_with_negation(a):
    assert decorate(negate(a)) == pol_negate(decorate(a))


@settings(max_examples=500)
@given(formulas())
def test_decoration_avoids_vacuous_shifts(a):
    d = decorate(a)
    assert is_well_sorted(d)
    assert polarity(d) is polarity(a)
    for sub in subformulas(d):
        assert not (isinstance(sub, Down) and isinstance(sub.body, Up))
        assert not (isinstance(sub, Up) and isinstance(sub.body, Down))


@settings(max_examples=500)
@given(formulas())
def test_forget_undoes_decoration(a):
    assert forget(decorate(a)) == a


@settings(max_examples=300)
@given(any_polarized())
def test_pol_negate_is_an_involution(x):
    assert pol_negate(pol_negate(x)) == x
    assert forget(pol_negate(x)) == negate(forget(x))


# -- checker ---------------------------------------------------------------------

p, q, r, s = (PosAtom(n) for n in "pqrs")
np_, nq = NegAtom("p"), NegAtom("q")


def test_identity():
    assert check_pol(ProofNode("I", Stoup(p, p)))
    assert not check_pol(ProofNode("I", Stoup(p, q)))


def test_product_right_needs_a_stoup_conclusion():
    leaves = (ProofNode("I", Stoup(p, p)), ProofNode("I", Stoup(q, q)))
    assert check_pol(ProofNode("*R", Stoup(STimes(p, q), Tensor(p, q)), leaves))
    assert not check_pol(ProofNode("*R", Presentation(STimes(p, q), Tensor(p, q)), leaves))


def _par_translation():
    """The polarized derivation replacing the par rule when both operands
    are negative: from r ; _~p and s ; _~q derive s . r ; _(~p + ~q)."""
    par = Down(parse_pol_formula("~p + ~q"))
    hyp_a = Presentation(r, Down(np_))
    hyp_b = Presentation(s, Down(nq))
    times = ProofNode("*R", Stoup(STimes(q, p), Tensor(q, p)), (ProofNode("I", Stoup(q, q)), ProofNode("I", Stoup(p, p))))
    shift_left = ProofNode("_L", Presentation(STimes(q, p), par), (times,))
    inner = ProofNode("dp", Presentation(SObslash(p, par), q), (shift_left,))
    inner = ProofNode("_R", Stoup(SObslash(p, par), Down(nq)), (inner,))
    inner = ProofNode("T", Presentation(SObslash(p, par), s), (inner, ProofNode("hyp", hyp_b)))
    inner = ProofNode("dp", Presentation(SOslash(par, s), p), (inner,))
    inner = ProofNode("_R", Stoup(SOslash(par, s), Down(np_)), (inner,))
    inner = ProofNode("T", Presentation(SOslash(par, s), r), (inner, ProofNode("hyp", hyp_a)))
    root = ProofNode("dp", Presentation(STimes(s, r), par), (inner,))
    return root, (hyp_a, hyp_b)


def test_par_translation_derivation():
    proof, hyps = _par_translation()
    assert check_pol(proof, Variant.LG0, hyps)
    assert not check_pol(proof, Variant.LG0, hyps[:1])


def test_explicit_display_moves():
    w = Presentation(STimes(p, q), r)
    leaf = ProofNode("hyp", Presentation(p, SObslash(q, r)))
    assert check_pol(ProofNode("dp-assoc1", w, (leaf,)), hypotheses=[leaf.conclusion])
    assert check_pol(ProofNode("dp-swap", w, (ProofNode("hyp", w.swap()),)), hypotheses=[w.swap()])
    assert not check_pol(ProofNode("dp-swap", w, (leaf,)), hypotheses=[leaf.conclusion])
    assert not check_pol(ProofNode("dp", w, (ProofNode("hyp", Presentation(p, r)),)), hypotheses=[Presentation(p, r)])


def test_disjunction_rules():
    f = Or(p, q)
    assert check_pol(ProofNode("|Rl", Stoup(p, f), (ProofNode("I", Stoup(p, p)),)))
    assert not check_pol(ProofNode("|Rr", Stoup(p, f), (ProofNode("I", Stoup(p, p)),)))
