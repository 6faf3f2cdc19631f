import pytest
from hypothesis import given, settings

from support import formulas
from teamlogic.decide import (decide_entails, decide_equivalent, decide_valid,
                              flat_characterize)
from teamlogic.syntax import FragmentError, Implies, Neg, Tensor, parse, to_text
from teamlogic.teameval import eval_team, oracle_entails, oracle_flat, oracle_valid


def test_validity_examples():
    assert decide_valid(parse("~~p -> p"), "mt0").kind == "Valid"
    assert decide_valid(parse("p | ~p"), "md").kind == "Valid"
    f = parse("~~(p \\/ ~p) -> (p \\/ ~p)")
    v = decide_valid(f, "mt0")
    assert v.kind == "Falsifiable"
    m, x = v.counter
    assert not eval_team(m, x, f)


def test_entailment_examples():
    a, b = parse("=(p)"), parse("p \\/ ~p")
    assert decide_entails(a, b, "mdor").kind == "Entailed"
    assert decide_entails(b, a, "mdor").kind == "Entailed"
    v = decide_entails(parse("=(p,q)"), parse("=(q,p)"), "md")
    assert v.kind == "NotEntailed"
    m, x = v.counter
    assert eval_team(m, x, parse("=(p,q)")) and not eval_team(m, x, parse("=(q,p)"))
    f = parse("<>=(p) & [](q \\/ ~q)")
    assert decide_entails(f, f, "mid").affirmative


def test_certificates_name_k_entailments():
    v = decide_entails(parse("p & q \\/ q"), parse("q \\/ p"), "mid")
    assert v.kind == "Entailed" and v.certificate == ((0, 0), (1, 0))


def test_flat_characterize_examples():
    a = parse("~p & <>q")
    assert flat_characterize(a, "mt0") is a
    assert flat_characterize(parse("p \\/ ~p"), "mid") is None
    assert to_text(flat_characterize(parse("bot \\/ bot"), "mid")) == "bot"


def test_flatness_witness_can_exceed_three_worlds():
    f = parse("=(p) | =(q)")
    assert flat_characterize(f, "mt0") is None
    assert oracle_flat(f, 3).holds
    from teamlogic.kripke import KripkeModel
    m = KripkeModel(4, [0] * 4, {"p": 0b0011, "q": 0b0101})
    assert all(eval_team(m, 1 << w, f) for w in range(4)) and not eval_team(m, 0b1111, f)


def test_equivalence_and_fragment_errors():
    assert decide_equivalent(parse("[](p \\/ q)"), parse("[]p \\/ []q"))
    assert decide_equivalent(parse("<>(p \\/ q)"), parse("<>p \\/ <>q"))
    assert not decide_equivalent(parse("<>(p | q)"), parse("<>p \\/ <>q"))
    with pytest.raises(FragmentError):
        decide_valid(parse("p \\/ q"), "md")


@settings(max_examples=60, deadline=None)
@given(formulas("mt0", max_leaves=4), formulas("mt0", max_leaves=4))
def test_entailment_agrees_with_oracle(phi, psi):
    v = decide_entails(phi, psi, "mt0")
    o = oracle_entails(phi, psi, 2)
    if not o.holds:
        assert v.kind == "NotEntailed"
    if v.kind == "NotEntailed":
        m, x = v.counter
        assert eval_team(m, x, phi) and not eval_team(m, x, psi)


@settings(max_examples=60, deadline=None)
@given(formulas("mdor", max_leaves=4))
def test_md_family_validity_agrees_with_oracle(f):
    v = decide_valid(f, "mdor")
    if v.affirmative:
        assert oracle_valid(f, 2).holds
    else:
        m, x = v.counter
        assert not eval_team(m, x, f)


@settings(max_examples=60, deadline=None)
@given(formulas("mt0", max_leaves=4))
def test_flatness_matches_oracle_and_tensor_test(f):
    # a bounded oracle only refutes flatness; "=(p) | =(q)" needs four worlds
    flat = flat_characterize(f, "mt0") is not None
    if flat or not oracle_flat(f, 3).holds:
        assert oracle_flat(f, 3).holds == flat
    assert flat == decide_valid(Tensor(f, Neg(f)), "mt0").affirmative
    assert flat == decide_valid(Tensor(f, Implies(f, parse("bot"))), "mt0").affirmative
