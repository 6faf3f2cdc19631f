"""Exhaustive small-formula corpora.

``corpus(frag, depth)`` lists every well-formed formula of the fragment with
AST depth at most ``depth`` (atoms have depth 1), built from the given
propositions and ``bot``. Dependence atoms take at most ``dep_arity``
argument formulas before the determined one. The order is deterministic:
by depth, then by construction order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

from .syntax import (BOT, And, Box, Dep, Diamond, Formula, Fragment, Implies,
                     Neg, Or, Prop, Tensor, in_fragment, is_classical)

__all__ = ["corpus", "classical_corpus", "dep_free", "PROPS"]

PROPS = ("p", "q")

_UNARY = (Neg, Box, Diamond)
_BINARY = (And, Tensor, Or, Implies)


@lru_cache(maxsize=None)
def _levels(depth: int, props: tuple, dep_arity: int) -> tuple:
    """``levels[d]``: all MT0 candidate formulas of depth exactly ``d + 1``."""
    levels: list[list[Formula]] = [[Prop(p) for p in props] + [BOT]]
    for d in range(1, depth):
        below = [f for lvl in levels for f in lvl]
        top = levels[-1]
        out: list[Formula] = []
        for op in _UNARY:
            out += [op(f) for f in top]
        for op in _BINARY:
            for a, b in product(below, repeat=2):
                if a.depth == d or b.depth == d:
                    out.append(op(a, b))
        args = [f for f in below if is_classical(f, Fragment.MT0)]
        for k in range(dep_arity + 1):
            for combo in product(args, repeat=k + 1):
                if any(c.depth == d for c in combo):
                    out.append(Dep(combo[:-1], combo[-1]))
        levels.append(out)
    return tuple(tuple(lvl) for lvl in levels)


def corpus(frag: "Fragment | str", depth: int = 3, props: Sequence[str] = PROPS,
           dep_arity: int = 1) -> list[Formula]:
    """Every formula of ``frag`` up to ``depth``, deduplicated."""
    frag = Fragment.parse(frag)
    seen: set = set()
    out = []
    for lvl in _levels(depth, tuple(props), dep_arity):
        for f in lvl:
            if f not in seen and in_fragment(f, frag):
                seen.add(f)
                out.append(f)
    return out


def classical_corpus(frag: "Fragment | str", depth: int = 3,
                     props: Sequence[str] = PROPS) -> list[Formula]:
    """The classical formulas of ``frag``'s corpus."""
    frag = Fragment.parse(frag)
    return [f for f in corpus(frag, depth, props, 0) if is_classical(f, frag)]


def dep_free(fs) -> list[Formula]:
    """Drop formulas containing a dependence atom (the ``-`` fragments)."""
    out = []
    for f in fs:
        stack = [f]
        ok = True
        while stack and ok:
            g = stack.pop()
            ok = not isinstance(g, Dep)
            stack.extend(g.children)
        if ok:
            out.append(f)
    return out
