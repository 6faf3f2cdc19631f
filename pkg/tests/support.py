"""Shared hypothesis strategies and small helpers for the test-suite."""

import hypothesis.strategies as st

from teamlogic.kripke import KripkeModel
from teamlogic.syntax import (BOT, And, Box, Dep, Diamond, Fragment, Implies,
                              Neg, Or, Prop, Tensor, in_fragment)

PROPS = ("p", "q")

_CLASSICAL_OPS = {
    "k": (Neg, And, Tensor),
    "karrow": (Neg, And, Implies),
    "mt0": (Neg, And, Tensor, Implies),
}
_CLASSICAL_OF = {
    Fragment.MD: "k", Fragment.MDplus: "k", Fragment.MDor: "k", Fragment.K: "k",
    Fragment.MID: "karrow", Fragment.KArrow: "karrow", Fragment.MT0: "mt0",
}


def atoms(props=PROPS):
    return st.sampled_from([Prop(p) for p in props] + [BOT])


def classical(frag="mt0", props=PROPS, max_leaves=6):
    frag = Fragment.parse(frag)
    ops = _CLASSICAL_OPS[_CLASSICAL_OF[frag]]

    def extend(kids):
        unary = st.sampled_from([o for o in ops if o is Neg] + [Box, Diamond])
        binary = st.sampled_from([o for o in ops if o is not Neg])
        return st.one_of(
            st.builds(lambda o, c: o(c), unary, kids),
            st.builds(lambda o, a, b: o(a, b), binary, kids, kids),
        )

    return st.recursive(atoms(props), extend, max_leaves=max_leaves)


def dep_atoms(frag, props=PROPS, max_args=2):
    frag = Fragment.parse(frag)
    arg = st.sampled_from([Prop(p) for p in props]) if frag is Fragment.MD \
        else classical(frag, props, max_leaves=2)
    return st.builds(lambda args, t: Dep(tuple(args), t),
                     st.lists(arg, max_size=max_args), arg)


_BIN = {
    Fragment.MD: (And, Tensor),
    Fragment.MDplus: (And, Tensor),
    Fragment.MDor: (And, Tensor, Or),
    Fragment.MID: (And, Or, Implies),
    Fragment.MT0: (And, Tensor, Or, Implies),
}


def formulas(frag="mt0", props=PROPS, max_leaves=5, max_args=1):
    """Well-formed formulas of ``frag`` (dep atoms with at most ``max_args`` arguments)."""
    frag = Fragment.parse(frag)
    if frag in (Fragment.K, Fragment.KArrow):
        return classical(frag, props, max_leaves)
    leaves = st.one_of(atoms(props), dep_atoms(frag, props, max_args),
                       classical(frag, props, max_leaves=3))

    def extend(kids):
        out = [
            st.builds(lambda o, c: o(c), st.sampled_from([Box, Diamond]), kids),
            st.builds(lambda o, a, b: o(a, b), st.sampled_from(_BIN[frag]), kids, kids),
        ]
        if frag in (Fragment.MID, Fragment.MT0):
            out.append(st.builds(Neg, kids))
        return st.one_of(*out)

    return st.recursive(leaves, extend, max_leaves=max_leaves).filter(
        lambda f: in_fragment(f, frag))


@st.composite
def models(draw, max_worlds=3, props=PROPS, min_worlds=1):
    n = draw(st.integers(min_worlds, max_worlds))
    full = (1 << n) - 1
    succ = [draw(st.integers(0, full)) for _ in range(n)]
    val = {p: draw(st.integers(0, full)) for p in props}
    return KripkeModel(n, succ, val)


@st.composite
def pointed_teams(draw, max_worlds=3, props=PROPS, nonempty=False):
    m = draw(models(max_worlds, props))
    x = draw(st.integers(1 if nonempty else 0, m.full))
    return m, x


def subteams_of(x):
    """All subteams of mask ``x``."""
    out = []
    y = x
    while True:
        out.append(y)
        if y == 0:
            return out
        y = (y - 1) & x


# --- instance generator for the axiom-scheme soundness audit -----------------

_POOL = {
    "mt0": ["p", "q", "bot", "~p", "=(p)", "=(p,q)", "p \\/ q", "p | ~p", "[]p", "<>q",
            "p -> q", "<>=(q)", "[](p \\/ q)", "~(p \\/ q)"],
    "mid": ["p", "q", "bot", "~p", "=(p)", "=(p,q)", "p \\/ q", "[]p", "<>q",
            "p -> q", "<>=(q)", "[](p \\/ q)", "=(p) -> q \\/ ~q"],
    "inql": ["p", "q", "bot", "~p", "p \\/ q", "p -> q", "p & q", "(p -> q) \\/ ~p"],
}
_CLASSICAL_POOL = {
    "mt0": ["p", "q", "bot", "~p", "[]p", "<>q", "p & q", "p | q", "~[]~p", "p -> q"],
    "mid": ["p", "q", "bot", "~p", "[]p", "<>q", "p & q", "p -> q", "~[]~p"],
    "inql": ["p", "q", "bot", "~p", "p & q", "p -> q"],
}
SYSTEM_FRAGMENT = {"HMT0": "mt0", "HMID": "mid", "HInql": "mt0", "HK": "mt0"}


def scheme_instances(system, per_scheme=None, seed=0, budget=256):
    """Yield ``(scheme id, instance)`` pairs respecting classical side conditions.

    The full cartesian product over the pools is used unless ``per_scheme``
    caps it, in which case a seeded sample of that size is drawn. Instances
    whose normal form would exceed ``budget`` disjuncts are skipped.
    """
    import random
    from itertools import product

    from teamlogic.hilbert import instantiate, system_schemes
    from teamlogic.normalform import dnf_size
    from teamlogic.syntax import parse

    key = {"HMT0": "mt0", "HMID": "mid", "HInql": "inql", "HK": "mt0"}[system]
    general = [parse(t) for t in _POOL[key]]
    classic = [parse(t) for t in _CLASSICAL_POOL[key]]
    if system == "HK":
        general = classic
    rng = random.Random(seed)
    for s in system_schemes(system):
        if s.id == "3":
            combos = [dict({f"ALPHA{i + 1}": a for i, a in enumerate(args)}, BETA=b)
                      for k in range(3) for args in product(classic[:5], repeat=k)
                      for b in classic[:6]]
        else:
            names = s.metavars
            choices = [classic if n.startswith(("ALPHA", "BETA")) else general for n in names]
            combos = [dict(zip(names, vs)) for vs in product(*choices)]
        frag = SYSTEM_FRAGMENT[system]
        found = [instantiate(s.id, env) for env in combos]
        found = [f for f in found if dnf_size(f, frag, cap=budget + 1) <= budget]
        if per_scheme is not None and len(found) > per_scheme:
            found = rng.sample(found, per_scheme)
        for f in found:
            yield s.id, f
