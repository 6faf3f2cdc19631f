"""Standard translation into first-order dependence logic syntax.

The output is a small first-order AST (unary predicates, the binary ``R``,
connectives, quantifiers, extended dependence atoms) with two renderings:

* ``unicode`` (default): ``Px``, ``xRy``, ``∀y(¬xRy ⊗ Py)``, ``∃y(xRy ∧ Py)``;
  a one-letter proposition ``p`` becomes the predicate ``P`` written in
  front of its variable, longer names are written ``Name(x)``.
* ``ascii``: ``P_p(x)``, ``x R y``, ``forall y (~x R y | P_p(y))``,
  with the connective tokens of the modal grammar.

Bound variables are ``y``, ``y1``, ``y2``, ... (``y₁`` ... in unicode),
allocated left to right.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (And, Bot, Box, Dep, Diamond, Formula, Implies, Neg, Or,
                     Prop, Tensor)

__all__ = ["FOFormula", "standard_translate", "FOAtom", "FORel", "FOBot",
           "FONeg", "FOBinary", "FOQuant", "FODep"]

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


class FOFormula:
    def free_vars(self) -> frozenset:
        raise NotImplementedError

    def quantifier_depth(self) -> int:
        raise NotImplementedError

    def render(self, style: str = "unicode") -> str:
        if style not in ("unicode", "ascii"):
            raise ValueError("style must be 'unicode' or 'ascii'")
        return _render(self, style, 0)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class FOAtom(FOFormula):
    prop: str
    var: str

    def free_vars(self):
        return frozenset({self.var})

    def quantifier_depth(self):
        return 0


@dataclass(frozen=True)
class FORel(FOFormula):
    left: str
    right: str

    def free_vars(self):
        return frozenset({self.left, self.right})

    def quantifier_depth(self):
        return 0


@dataclass(frozen=True)
class FOBot(FOFormula):
    def free_vars(self):
        return frozenset()

    def quantifier_depth(self):
        return 0


@dataclass(frozen=True)
class FONeg(FOFormula):
    child: FOFormula

    def free_vars(self):
        return self.child.free_vars()

    def quantifier_depth(self):
        return self.child.quantifier_depth()


@dataclass(frozen=True)
class FOBinary(FOFormula):
    op: str                     # "and" | "tensor" | "or" | "implies"
    left: FOFormula
    right: FOFormula

    def free_vars(self):
        return self.left.free_vars() | self.right.free_vars()

    def quantifier_depth(self):
        return max(self.left.quantifier_depth(), self.right.quantifier_depth())


@dataclass(frozen=True)
class FOQuant(FOFormula):
    kind: str                   # "forall" | "exists"
    var: str
    body: FOFormula

    def free_vars(self):
        return self.body.free_vars() - {self.var}

    def quantifier_depth(self):
        return 1 + self.body.quantifier_depth()


@dataclass(frozen=True)
class FODep(FOFormula):
    args: tuple[FOFormula, ...]

    def free_vars(self):
        out: frozenset = frozenset()
        for a in self.args:
            out |= a.free_vars()
        return out

    def quantifier_depth(self):
        return max(a.quantifier_depth() for a in self.args)


# ---------------------------------------------------------------------------
# translation


class _Fresh:
    def __init__(self, avoid: str):
        self.k = 0
        self.avoid = avoid

    def __call__(self) -> str:
        while True:
            name = "y" if self.k == 0 else f"y{self.k}"
            self.k += 1
            if name != self.avoid:
                return name


_BIN = {And: "and", Tensor: "tensor", Or: "or", Implies: "implies"}


def standard_translate(f: Formula, x: str = "x") -> FOFormula:
    """``ST_x(f)``, clause by clause, with fresh bound variables."""
    if not x or not x.isidentifier():
        raise ValueError(f"bad variable name {x!r}")
    return _st(f, x, _Fresh(x))


def _st(f: Formula, x: str, fresh: _Fresh) -> FOFormula:
    if isinstance(f, Prop):
        return FOAtom(f.name, x)
    if isinstance(f, Bot):
        return FOBot()
    if isinstance(f, Neg):
        return FONeg(_st(f.child, x, fresh))
    if isinstance(f, Dep):
        return FODep(tuple(_st(a, x, fresh) for a in f.children))
    if type(f) in _BIN:
        left = _st(f.left, x, fresh)
        return FOBinary(_BIN[type(f)], left, _st(f.right, x, fresh))
    if isinstance(f, Box):
        y = fresh()
        return FOQuant("forall", y, FOBinary("tensor", FONeg(FORel(x, y)), _st(f.child, y, fresh)))
    if isinstance(f, Diamond):
        y = fresh()
        return FOQuant("exists", y, FOBinary("and", FORel(x, y), _st(f.child, y, fresh)))
    raise TypeError(f"unexpected node {f!r}")


# ---------------------------------------------------------------------------
# rendering

_LEVEL = {"implies": 0, "or": 1, "tensor": 2, "and": 3}
_TOKENS = {
    "unicode": {"and": " ∧ ", "tensor": " ⊗ ", "or": " ∨ ", "implies": " → ",
                "neg": "¬", "bot": "⊥", "forall": "∀", "exists": "∃"},
    "ascii": {"and": " & ", "tensor": " | ", "or": " \\/ ", "implies": " -> ",
              "neg": "~", "bot": "bot", "forall": "forall ", "exists": "exists "},
}


def _var(v: str, style: str) -> str:
    if style == "unicode" and v[:1] == "y" and v[1:].isdigit():
        return "y" + v[1:].translate(_SUB)
    return v


def _pred(prop: str, var: str, style: str) -> str:
    if style == "ascii":
        return f"P_{prop}({var})"
    name = prop[0].upper() + prop[1:]
    return f"{name}{var}" if len(prop) == 1 else f"{name}({var})"


def _render(g: FOFormula, style: str, ctx: int) -> str:
    tok = _TOKENS[style]
    if isinstance(g, FOAtom):
        return _pred(g.prop, _var(g.var, style), style)
    if isinstance(g, FORel):
        a, b = _var(g.left, style), _var(g.right, style)
        return f"{a}R{b}" if style == "unicode" else f"{a} R {b}"
    if isinstance(g, FOBot):
        return tok["bot"]
    if isinstance(g, FONeg):
        return tok["neg"] + _render(g.child, style, 4)
    if isinstance(g, FODep):
        return "=(" + ",".join(_render(a, style, 0) for a in g.args) + ")"
    if isinstance(g, FOQuant):
        body = _render(g.body, style, 0)
        sep = "" if style == "unicode" else " "
        return f"{tok[g.kind]}{_var(g.var, style)}{sep}({body})"
    if isinstance(g, FOBinary):
        lvl = _LEVEL[g.op]
        if g.op == "implies":
            left = _render(g.left, style, lvl + 1)
            right = _render(g.right, style, lvl)
        else:
            left = _render(g.left, style, lvl)
            right = _render(g.right, style, lvl + 1)
        text = left + tok[g.op] + right
        return f"({text})" if lvl < ctx else text
    raise TypeError(f"unexpected node {g!r}")
