"""A tableau prover for the basic modal logic K.

Classical formulas are put into negation normal form (with ``|`` as
classical disjunction), then a branch is saturated propositionally. Every
``<>`` formula of an open branch spawns one successor world that inherits
all ``[]`` bodies. Open branches are read off as finite countermodels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .kripke import KripkeModel
from .syntax import (BOT, TOP, And, Bot, Box, Diamond, Formula, Fragment,
                     Implies, Neg, Prop, Tensor, is_classical, to_text)
from .teameval import eval_world

__all__ = ["KVerdict", "k_valid", "k_entails", "k_satisfiable", "nnf"]


@dataclass(frozen=True)
class KVerdict:
    valid: bool
    counter: Optional[tuple[KripkeModel, int]] = None

    @property
    def kind(self) -> str:
        return "Valid" if self.valid else "Falsifiable"


def nnf(a: Formula, positive: bool = True) -> Formula:
    """Negation normal form of a classical formula.

    The result uses only literals (``p``, ``~p``), ``bot``, ``~bot``, ``&``,
    ``|`` (read classically), ``[]`` and ``<>``.
    """
    if isinstance(a, Prop):
        return a if positive else Neg(a)
    if isinstance(a, Bot):
        return BOT if positive else TOP
    if isinstance(a, Neg):
        return nnf(a.child, not positive)
    if isinstance(a, And):
        l, r = nnf(a.left, positive), nnf(a.right, positive)
        return And(l, r) if positive else Tensor(l, r)
    if isinstance(a, Tensor):
        l, r = nnf(a.left, positive), nnf(a.right, positive)
        return Tensor(l, r) if positive else And(l, r)
    if isinstance(a, Implies):
        if positive:
            return Tensor(nnf(a.left, False), nnf(a.right, True))
        return And(nnf(a.left, True), nnf(a.right, False))
    if isinstance(a, Box):
        c = nnf(a.child, positive)
        return Box(c) if positive else Diamond(c)
    if isinstance(a, Diamond):
        c = nnf(a.child, positive)
        return Diamond(c) if positive else Box(c)
    raise ValueError(f"{to_text(a)} is not a classical formula")


class _Node:
    __slots__ = ("true", "children")

    def __init__(self, true, children):
        self.true = true
        self.children = children


def _disjuncts(f: Formula, out: list) -> list:
    if isinstance(f, Tensor):
        _disjuncts(f.left, out)
        _disjuncts(f.right, out)
    else:
        out.append(f)
    return out


class _Prover:
    """Branch saturation with simplification and semantic branching.

    Non-branching rules run first. Pending disjunctions are then evaluated
    three-valuedly against the branch (literals plus asserted modal
    formulas, which count as atoms): satisfied ones are dropped, false
    disjuncts are removed and a single survivor is asserted outright. Only
    then is the first remaining disjunction split, into ``a`` and
    ``nnf(~a) & rest``.
    """

    def __init__(self):
        self.unsat: set = set()

    def sat(self, todo: tuple) -> Optional[_Node]:
        return self._world(tuple(todo))

    def _world(self, todo: tuple) -> Optional[_Node]:
        key = frozenset(todo)
        if key in self.unsat:
            return None
        hit = self._branch(list(todo), _Branch(), [])
        if hit is None:
            self.unsat.add(key)
        return hit

    def _branch(self, todo, br: "_Branch", ors) -> Optional[_Node]:
        br = br.copy()
        ors = list(ors)
        while True:
            while todo:
                f = todo.pop()
                if isinstance(f, And):
                    todo += [f.right, f.left]
                elif isinstance(f, Tensor):
                    ors.append(_disjuncts(f, []))
                elif not br.assert_(f):
                    return None
            pending = []
            for ds in ors:
                live = []
                for d in ds:
                    v = br.value(d)
                    if v is True:
                        break
                    if v is None:
                        live.append(d)
                else:
                    if not live:
                        return None
                    if len(live) == 1:
                        todo.append(live[0])
                    else:
                        pending.append(live)
            ors = pending
            if not todo:
                break
        if ors:
            first, rest = ors[0], ors[1:]
            head, tail = first[0], first[1:]
            hit = self._branch([head], br, rest)
            if hit is not None:
                return hit
            return self._branch([nnf(head, False)], br, rest + [tail])
        kids = []
        for d in br.dias:
            child = self._world((d, *br.boxes))
            if child is None:
                return None
            kids.append(child)
        return _Node(br.pos, kids)


class _Branch:
    """Literals and modal formulas asserted on one branch of one world."""

    __slots__ = ("pos", "neg", "boxes", "dias", "mods")

    def __init__(self):
        self.pos, self.neg = frozenset(), frozenset()
        self.boxes: tuple = ()
        self.dias: tuple = ()
        self.mods = frozenset()

    def copy(self) -> "_Branch":
        out = _Branch()
        out.pos, out.neg, out.boxes, out.dias, out.mods = \
            self.pos, self.neg, self.boxes, self.dias, self.mods
        return out

    def assert_(self, f: Formula) -> bool:
        """Add a literal or modal formula; ``False`` on an immediate clash."""
        if isinstance(f, Prop):
            if f in self.neg:
                return False
            self.pos = self.pos | {f}
        elif isinstance(f, Neg):
            if isinstance(f.child, Bot):
                return True
            if f.child in self.pos:
                return False
            self.neg = self.neg | {f.child}
        elif isinstance(f, Bot):
            return False
        elif isinstance(f, (Box, Diamond)):
            if f in self.mods:
                return True
            if _dual(f) in self.mods:
                return False
            self.mods = self.mods | {f}
            if isinstance(f, Box):
                self.boxes = self.boxes + (f.child,)
            else:
                self.dias = self.dias + (f.child,)
        else:
            raise ValueError(f"unexpected node in negation normal form: {f!r}")
        return True

    def value(self, f: Formula) -> Optional[bool]:
        """Three-valued truth of an NNF formula on the branch so far."""
        if isinstance(f, Prop):
            return True if f in self.pos else (False if f in self.neg else None)
        if isinstance(f, Bot):
            return False
        if isinstance(f, Neg):
            if isinstance(f.child, Bot):
                return True
            return True if f.child in self.neg else (False if f.child in self.pos else None)
        if isinstance(f, (Box, Diamond)):
            if f in self.mods:
                return True
            return False if _dual(f) in self.mods else None
        if isinstance(f, And):
            a = self.value(f.left)
            if a is False:
                return False
            b = self.value(f.right)
            if b is False:
                return False
            return True if a is True and b is True else None
        a = self.value(f.left)
        if a is True:
            return True
        b = self.value(f.right)
        if b is True:
            return True
        return False if a is False and b is False else None


def _dual(f: Formula) -> Formula:
    # the NNF negation of a modal formula
    return nnf(f, False)


def _to_model(root: _Node, props) -> KripkeModel:
    order: list[_Node] = []
    edges: list[tuple[int, int]] = []

    def visit(node):
        me = len(order)
        order.append(node)
        for c in node.children:
            edges.append((me, len(order)))
            visit(c)

    visit(root)
    succ = [0] * len(order)
    for w, v in edges:
        succ[w] |= 1 << v
    val = {p: 0 for p in props}
    for w, node in enumerate(order):
        for atom in node.true:
            val[atom.name] |= 1 << w
    return KripkeModel(len(order), succ, val)


def _require(a: Formula, frag: Fragment) -> None:
    if not is_classical(a, frag):
        raise ValueError(f"{to_text(a)} is not classical in {frag.value}")


def k_satisfiable(*fs: Formula) -> Optional[tuple[KripkeModel, int]]:
    """A pointed model satisfying every formula in ``fs``, or ``None``."""
    props = sorted(set().union(*(f.props for f in fs))) if fs else []
    root = _Prover().sat(tuple(nnf(f) for f in fs))
    if root is None:
        return None
    return _to_model(root, props), 0


def k_valid(a: Formula, frag: "Fragment | str" = Fragment.MT0) -> KVerdict:
    """Validity in K; a Falsifiable verdict carries a checked pointed countermodel."""
    frag = Fragment.parse(frag)
    _require(a, frag)
    hit = k_satisfiable(Neg(a))
    if hit is None:
        return KVerdict(True)
    m, w = hit
    if eval_world(m, w, a):
        raise AssertionError(f"tableau countermodel does not refute {to_text(a)}")
    return KVerdict(False, hit)


def k_entails(a: Formula, b: Formula, frag: "Fragment | str" = Fragment.MT0) -> KVerdict:
    """``a |=_K b``; a counter world satisfies ``a`` and refutes ``b``."""
    frag = Fragment.parse(frag)
    _require(a, frag)
    _require(b, frag)
    hit = k_satisfiable(a, Neg(b))
    if hit is None:
        return KVerdict(True)
    m, w = hit
    if not eval_world(m, w, a) or eval_world(m, w, b):
        raise AssertionError("tableau countermodel failed re-verification")
    return KVerdict(False, hit)
