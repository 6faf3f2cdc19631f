import pytest
from hypothesis import given, settings

from support import classical, formulas, pointed_teams
from teamlogic.normalform import (RealizingFunction, dnf, realize,
                                  realize_all, realizing_functions,
                                  valuations)
from teamlogic.syntax import (FragmentError, Or, dep_occurrences, disj,
                              is_classical, parse, to_text)
from teamlogic.teameval import eval_team

PAPER_FORMULA = "=([]p,q) | []=([]p,q)"


def texts(nf):
    return [to_text(a) for a in nf]


def test_dnf_examples():
    assert texts(dnf(parse("~p & <>q"), "mt0")) == ["~p & <>q"]
    assert texts(dnf(parse("=(p,q)"), "mt0")) == [
        "(p -> q) & (~p -> q)", "(p -> q) & (~p -> ~q)",
        "(p -> ~q) & (~p -> q)", "(p -> ~q) & (~p -> ~q)"]
    assert texts(dnf(parse("[](p \\/ q)"), "mid")) == ["[]p", "[]q"]


def test_dnf_checks_fragment():
    with pytest.raises(FragmentError):
        dnf(parse("p | q"), "mid")


def test_valuations_and_functions():
    assert valuations(0) == [()]
    assert valuations(1) == [(1,), (0,)]
    assert len(realizing_functions(2)) == 16
    assert realizing_functions(1)[0].table == (1, 1)


def test_paper_realization():
    f = parse(PAPER_FORMULA)
    paths = [path for path, _ in dep_occurrences(f)]
    one = RealizingFunction(1, (1, 1))
    g = RealizingFunction.from_callable(1, lambda v: 1 - v[0])
    assert g.table == (0, 1)
    got = realize(f, {paths[0]: one, paths[1]: g})
    assert to_text(got) == "[]p & q | ~[]p & q | []([]p & ~q | ~[]p & q)"


def test_realize_examples():
    assert realize(parse("p & <>q"), {}) is parse("p & <>q")
    zero_arity = parse("=(q)")
    assert realize(zero_arity, {(): RealizingFunction(0, (1,))}) is parse("q")
    assert realize(zero_arity, {(): RealizingFunction(0, (0,))}) is parse("~q")
    with pytest.raises(KeyError):
        realize(zero_arity, {})


def test_realize_all_examples():
    assert len(realize_all(parse(PAPER_FORMULA))) == 16
    assert [to_text(g) for _, g in realize_all(parse("p"))] == ["p"]
    assert [to_text(g) for _, g in realize_all(parse("=(p)"))] == ["p", "~p"]
    with pytest.raises(ValueError):
        realize_all(parse("=(p) \\/ q"))


@settings(max_examples=80, deadline=None)
@given(formulas("mt0", max_leaves=4))
def test_dnf_disjuncts_are_classical(f):
    assert all(is_classical(a, "mt0") for a in dnf(f, "mt0"))


@settings(max_examples=80, deadline=None)
@given(formulas("mid", max_leaves=4))
def test_mid_disjuncts_are_karrow_classical(f):
    assert all(is_classical(a, "mid") for a in dnf(f, "mid"))


@given(classical("mt0"))
def test_dnf_fixes_classical_formulas(a):
    assert texts(dnf(a, "mt0")) == [to_text(a)]


@settings(max_examples=100, deadline=None)
@given(pointed_teams(), formulas("mt0", max_leaves=4))
def test_dnf_is_equivalent(pt, f):
    m, x = pt
    assert eval_team(m, x, f) == eval_team(m, x, dnf(f, "mt0").join())


@settings(max_examples=100, deadline=None)
@given(pointed_teams(), formulas("mdplus", max_leaves=4))
def test_realizations_cover_and_entail(pt, f):
    m, x = pt
    results = [eval_team(m, x, g) for _, g in realize_all(f)]
    assert eval_team(m, x, f) == any(results)
    if any(results):
        assert eval_team(m, x, f)


def test_join_is_left_associated():
    nf = dnf(parse("p \\/ q \\/ ~p"), "mid")
    assert nf.join() is disj(*nf.disjuncts)
    assert isinstance(nf.join(), Or)
