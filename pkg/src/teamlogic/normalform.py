"""Disjunctive normal forms and dependence-atom realizations.

``dnf`` rewrites a formula into a finite intuitionistic disjunction of
classical formulas. For MID and MT0 it follows the tau translation; the
implication-free fragments expand each dependence atom into its
realizations instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

from .syntax import (BOT, And, Box, Dep, Diamond, Formula, Fragment,
                     FragmentError, Implies, Neg, Or, Tensor, conj, disj,
                     dep_occurrences, fragment_check, is_classical,
                     replace_at, tensor_all)

__all__ = ["NormalForm", "RealizingFunction", "dnf", "realize", "realize_all",
           "realizations", "dep_implication_form", "dep_tensor_form",
           "realizing_functions", "valuations", "dnf_size"]


@dataclass(frozen=True)
class NormalForm:
    """``disjuncts[0] \\/ ... \\/ disjuncts[-1]`` with classical disjuncts."""

    disjuncts: tuple[Formula, ...]

    def __len__(self) -> int:
        return len(self.disjuncts)

    def __iter__(self):
        return iter(self.disjuncts)

    def __getitem__(self, i):
        return self.disjuncts[i]

    def join(self) -> Formula:
        """The normal form as a single (left-associated) formula."""
        return disj(*self.disjuncts)


def valuations(k: int) -> list[tuple[int, ...]]:
    """All ``v`` in ``2^{1..k}``, with 1 before 0 in every coordinate."""
    return list(itertools.product((1, 0), repeat=k))


@dataclass(frozen=True)
class RealizingFunction:
    """A map from ``2^{1..k}`` to ``{0, 1}``.

    ``table[i]`` is the value on ``valuations(k)[i]``. For ``k = 0`` the
    domain is the single empty valuation.
    """

    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != 1 << self.arity or any(b not in (0, 1) for b in self.table):
            raise ValueError("realizing function table must list 2**k bits")

    def __call__(self, v) -> int:
        return self.table[valuations(self.arity).index(tuple(v))]

    @classmethod
    def from_callable(cls, k: int, fn) -> "RealizingFunction":
        return cls(k, tuple(int(fn(v)) for v in valuations(k)))


def realizing_functions(k: int) -> list[RealizingFunction]:
    """All ``2**(2**k)`` realizing functions, value vectors in lexicographic
    order with 1 first (so the constant-1 function comes first)."""
    return [RealizingFunction(k, t) for t in itertools.product((1, 0), repeat=1 << k)]


def _lit(a: Formula, bit: int) -> Formula:
    return a if bit else Neg(a)


def realize_dep(d: Dep, fn: RealizingFunction) -> Formula:
    """``d*_f``: the tensor over ``v`` of ``a1^v(1) & ... & ak^v(k) & b^f(v)``."""
    if fn.arity != len(d.args):
        raise ValueError("realizing function arity does not match the atom")
    parts = []
    for v, bit in zip(valuations(fn.arity), fn.table):
        lits = [_lit(a, b) for a, b in zip(d.args, v)]
        parts.append(conj(*lits, _lit(d.target, bit)))
    return tensor_all(*parts)


def dep_implication_form(d: Dep) -> Formula:
    """``(a1 \\/ ~a1) & ... & (ak \\/ ~ak) -> (b \\/ ~b)``; just ``b \\/ ~b`` for k = 0."""
    goal = Or(d.target, Neg(d.target))
    if not d.args:
        return goal
    return Implies(conj(*(Or(a, Neg(a)) for a in d.args)), goal)


def dep_tensor_form(d: Dep) -> Formula:
    """Tensor over ``v`` of ``a1^v(1) & ... & ak^v(k) & (b \\/ ~b)``."""
    parts = []
    for v in valuations(len(d.args)):
        lits = [_lit(a, b) for a, b in zip(d.args, v)]
        parts.append(conj(*lits, Or(d.target, Neg(d.target))))
    return tensor_all(*parts)


# ---------------------------------------------------------------------------
# tau


def _tau(f: Formula, frag: Fragment, memo: dict) -> tuple[Formula, ...]:
    hit = memo.get(f)
    if hit is not None:
        return hit
    if is_classical(f, frag):
        out: tuple = (f,)
    elif isinstance(f, Dep):
        if frag.is_md_family:
            out = tuple(realize_dep(f, fn) for fn in realizing_functions(len(f.args)))
        else:
            out = _tau(dep_implication_form(f), frag, memo)
    elif isinstance(f, Neg):
        # only reachable in MID/MT0, where ~phi abbreviates phi -> bot
        out = _tau(Implies(f.child, BOT), frag, memo)
    elif isinstance(f, Or):
        out = _tau(f.left, frag, memo) + _tau(f.right, frag, memo)
    elif isinstance(f, (And, Tensor)):
        a, b = _tau(f.left, frag, memo), _tau(f.right, frag, memo)
        ctor = type(f)
        out = tuple(ctor(x, y) for x in a for y in b)
    elif isinstance(f, Implies):
        a, b = _tau(f.left, frag, memo), _tau(f.right, frag, memo)
        out = tuple(conj(*(Implies(ai, b[j]) for ai, j in zip(a, choice)))
                    for choice in itertools.product(range(len(b)), repeat=len(a)))
    elif isinstance(f, (Box, Diamond)):
        ctor = type(f)
        out = tuple(ctor(x) for x in _tau(f.child, frag, memo))
    else:
        raise TypeError(f"unexpected node {f!r}")
    memo[f] = out
    return out


def dnf_size(f: Formula, frag: "Fragment | str" = Fragment.MT0, cap: Optional[int] = None) -> int:
    """Number of disjuncts :func:`dnf` would produce, without building them.

    Implications multiply exponentially (``|b| ** |a|``), so this is the
    cheap way to decide whether a normal form is worth computing. With
    ``cap`` every intermediate count saturates at ``cap``, which keeps the
    arithmetic small; the result is then ``min(size, cap)``.
    """
    frag = Fragment.parse(frag)
    memo: dict = {}
    clip = (lambda n: n) if cap is None else (lambda n: min(n, cap))

    def power(base: int, exp: int) -> int:
        if cap is None or base <= 1:
            return base ** exp
        out = 1
        for _ in range(exp):
            out *= base
            if out >= cap:
                return cap
        return out

    def size(g: Formula) -> int:
        hit = memo.get(g)
        if hit is not None:
            return hit
        if is_classical(g, frag):
            n = 1
        elif isinstance(g, Dep):
            n = power(2, 2 ** len(g.args)) if frag.is_md_family else size(dep_implication_form(g))
        elif isinstance(g, Neg):
            n = size(Implies(g.child, BOT))
        elif isinstance(g, Or):
            n = size(g.left) + size(g.right)
        elif isinstance(g, (And, Tensor)):
            n = size(g.left) * size(g.right)
        elif isinstance(g, Implies):
            n = power(size(g.right), size(g.left))
        else:
            n = size(g.child)
        n = clip(n)
        memo[g] = n
        return n

    return size(f)


def dnf(f: Formula, frag: "Fragment | str" = Fragment.MT0) -> NormalForm:
    """Normal form ``alpha_1 \\/ ... \\/ alpha_n`` with classical ``alpha_i``.

    Disjunct order follows the recursion: left operand outer, right operand
    inner; implication disjuncts are indexed by functions ``{1..n} -> {1..m}``
    in lexicographic order of their value vectors.
    """
    frag = Fragment.parse(frag)
    if frag in (Fragment.K, Fragment.KArrow):
        if not is_classical(f, frag):
            raise FragmentError(f, frag, fragment_check(f, frag))
        return NormalForm((f,))
    bad = fragment_check(f, frag)
    if bad:
        raise FragmentError(f, frag, bad)
    return NormalForm(_tau(f, frag, {}))


# ---------------------------------------------------------------------------
# realizations


def _occurrence_paths(f: Formula):
    return [p for p, _ in dep_occurrences(f)]


def realize(f: Formula, seq: Mapping[tuple[int, ...], RealizingFunction]) -> Formula:
    """Replace every dependence-atom occurrence by its realization.

    ``seq`` maps occurrence paths (child-index tuples, see
    :func:`teamlogic.syntax.dep_occurrences`) to realizing functions and
    must cover exactly the occurrences of ``f``.
    """
    occ = dep_occurrences(f)
    paths = {p for p, _ in occ}
    if set(seq) != paths:
        raise KeyError(f"realizing sequence keys {sorted(seq)} do not match occurrences {sorted(paths)}")
    # deepest-last order is irrelevant: dep atoms never nest inside one another
    out = f
    for path, d in occ:
        out = replace_at(out, path, realize_dep(d, seq[path]))
    return out


def realizations(f: Formula) -> Iterator[tuple[dict, Formula]]:
    """Yield ``(sequence, realization)`` over all realizing sequences.

    Occurrences are taken in pre-order; the product is lexicographic with the
    first occurrence varying slowest.
    """
    if any(isinstance(n, (Or, Implies)) for _, n in _walk(f)):
        raise ValueError("realizations are defined for formulas without \\/ and ->")
    occ = dep_occurrences(f)
    choices = [realizing_functions(len(d.args)) for _, d in occ]
    for combo in itertools.product(*choices):
        seq = {p: fn for (p, _), fn in zip(occ, combo)}
        yield seq, realize(f, seq)


def realize_all(f: Formula) -> list[tuple[dict, Formula]]:
    return list(realizations(f))


def _walk(f: Formula):
    from .syntax import subformulas
    return subformulas(f)
