"""Team semantics: the satisfaction relation ``M, X |= phi`` and bounded oracles."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .batch import MAX_WORLDS, universe
from .kripke import KripkeModel, image, members, subteams, successor_teams
from .syntax import (TOP, And, Bot, Box, Dep, Diamond, Formula, FragmentError,
                     Fragment, Implies, Neg, Or, Prop, Tensor, fragment_check,
                     is_classical)

__all__ = ["Verdict", "eval_team", "eval_world", "world_set", "extension",
           "oracle_entails", "oracle_valid", "oracle_flat", "Evaluator"]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded oracle search.

    ``witness`` is a ``(model, team)`` pair when the search found a
    counterexample and ``None`` otherwise.
    """

    holds: bool
    witness: Optional[tuple[KripkeModel, int]] = None

    @property
    def kind(self) -> str:
        return "Holds" if self.holds else "Fails"


_supported: dict = {}


def _require_supported(f: Formula) -> None:
    ok = _supported.get(f)
    if ok is None:
        ok = not fragment_check(f, Fragment.MT0)
        if len(_supported) > 100_000:
            _supported.clear()
        _supported[f] = ok
    if not ok:
        raise FragmentError(f, Fragment.MT0, fragment_check(f, Fragment.MT0))


class Evaluator:
    """Memoising evaluator for one model.

    ``naive=True`` switches the tensor clause to all covers and the diamond
    clause to all successor teams; by default the tensor uses splits
    ``(Y, X - Y)`` and the diamond uses choice-function teams, which is
    enough because every formula here is downward closed.
    """

    def __init__(self, m: KripkeModel, naive: bool = False):
        self.m = m
        self.naive = naive
        self.memo: dict = {}
        self._worlds: dict = {}

    def worlds(self, f: Formula) -> int:
        """Mask of worlds whose singleton team satisfies ``f``."""
        hit = self._worlds.get(f)
        if hit is None:
            hit = 0
            for w in range(self.m.n):
                if self.sat(1 << w, f):
                    hit |= 1 << w
            self._worlds[f] = hit
        return hit

    def sat(self, x: int, f: Formula) -> bool:
        key = (f, x)
        hit = self.memo.get(key)
        if hit is None:
            hit = self._sat(x, f)
            self.memo[key] = hit
        return hit

    def _sat(self, x: int, f: Formula) -> bool:
        m = self.m
        if isinstance(f, Prop):
            return x & ~m.valuation(f.name) == 0
        if isinstance(f, Bot):
            return x == 0
        if isinstance(f, Neg):
            return all(not self.sat(1 << w, f.child) for w in members(x))
        if isinstance(f, And):
            return self.sat(x, f.left) and self.sat(x, f.right)
        if isinstance(f, Or):
            return self.sat(x, f.left) or self.sat(x, f.right)
        if isinstance(f, Tensor):
            if self.naive:
                for y in subteams(x):
                    for z in subteams(x):
                        if y | z == x and self.sat(y, f.left) and self.sat(z, f.right):
                            return True
                return False
            return any(self.sat(y, f.left) and self.sat(x & ~y, f.right) for y in subteams(x))
        if isinstance(f, Implies):
            return all(not self.sat(y, f.left) or self.sat(y, f.right) for y in subteams(x))
        if isinstance(f, Box):
            return self.sat(image(m, x), f.child)
        if isinstance(f, Diamond):
            if self.naive:
                return any(self.sat(y, f.child) for y in successor_teams(m, x))
            ws = members(x)
            if any(m.succ[w] == 0 for w in ws):
                return False
            seen = set()
            for choice in itertools.product(*(members(m.succ[w]) for w in ws)):
                y = 0
                for v in choice:
                    y |= 1 << v
                if y not in seen:
                    seen.add(y)
                    if self.sat(y, f.child):
                        return True
            return False
        if isinstance(f, Dep):
            args = [self.worlds(a) for a in f.args]
            tgt = self.worlds(f.target)
            seen: dict = {}
            for w in members(x):
                sig = tuple(a >> w & 1 for a in args)
                val = tgt >> w & 1
                if seen.setdefault(sig, val) != val:
                    return False
            return True
        raise TypeError(f"unknown formula node {f!r}")


def eval_team(m: KripkeModel, x: int, f: Formula, *, naive: bool = False) -> bool:
    """``M, X |= f`` for a team given as a world bit-mask."""
    _require_supported(f)
    if x < 0 or x & ~m.full:
        raise ValueError(f"team {x:#b} is out of range for a {m.n}-world model")
    return Evaluator(m, naive).sat(x, f)


def extension(m: KripkeModel, f: Formula, *, naive: bool = False) -> int:
    """Bit-mask over all ``2**n`` teams: bit ``X`` set iff ``M, X |= f``."""
    _require_supported(f)
    ev = Evaluator(m, naive)
    out = 0
    for x in range(1 << m.n):
        if ev.sat(x, f):
            out |= 1 << x
    return out


def eval_world(m: KripkeModel, w: int, a: Formula) -> bool:
    """Ordinary single-world Kripke satisfaction for classical formulas.

    ``|`` is read as classical disjunction and ``->`` classically.
    """
    if not is_classical(a, Fragment.MT0):
        raise ValueError(f"{a} is not a classical formula")
    if not 0 <= w < m.n:
        raise ValueError(f"world {w} out of range")
    return _world(m, w, a)


def _world(m: KripkeModel, w: int, a: Formula) -> bool:
    if isinstance(a, Prop):
        return bool(m.valuation(a.name) >> w & 1)
    if isinstance(a, Bot):
        return False
    if isinstance(a, Neg):
        return not _world(m, w, a.child)
    if isinstance(a, And):
        return _world(m, w, a.left) and _world(m, w, a.right)
    if isinstance(a, Tensor):
        return _world(m, w, a.left) or _world(m, w, a.right)
    if isinstance(a, Implies):
        return not _world(m, w, a.left) or _world(m, w, a.right)
    if isinstance(a, Box):
        return all(_world(m, v, a.child) for v in members(m.succ[w]))
    if isinstance(a, Diamond):
        return any(_world(m, v, a.child) for v in members(m.succ[w]))
    raise ValueError(f"{a} is not a classical formula")


def world_set(m: KripkeModel, a: Formula) -> int:
    """Mask of worlds where the classical formula ``a`` holds."""
    return sum(1 << w for w in range(m.n) if eval_world(m, w, a))


# ---------------------------------------------------------------------------
# oracles


def _props(*fs: Formula) -> tuple[str, ...]:
    out: set = set()
    for f in fs:
        out |= f.props
    return tuple(sorted(out))


def _first_hit(bad: np.ndarray):
    idx = np.flatnonzero(bad)
    if idx.size == 0:
        return None
    i = int(idx[0])
    e = int(bad[i])
    x = (e & -e).bit_length() - 1
    return i, x


def _search(n: int, props, bad_of):
    u = universe(n, props)
    hit = _first_hit(bad_of(u))
    if hit is None:
        return None
    return u.model(hit[0]), hit[1]


def _bound(max_worlds: int) -> int:
    if max_worlds < 1:
        raise ValueError("max_worlds must be positive")
    if max_worlds > MAX_WORLDS:
        raise ValueError(f"bulk search is limited to {MAX_WORLDS} worlds")
    return max_worlds


def oracle_entails(phi: Formula, psi: Formula, max_worlds: int = 3, *,
                   engine: str = "bulk") -> Verdict:
    """Search models up to ``max_worlds`` worlds for a team satisfying
    ``phi`` but not ``psi``.

    ``Holds`` is a bounded verdict. Witnesses found by the bulk engine are
    re-checked with :func:`eval_team` before being returned. ``engine="eval"``
    runs the plain evaluator over :func:`enumerate_models` instead.
    """
    _require_supported(phi)
    _require_supported(psi)
    props = _props(phi, psi)
    if engine == "eval":
        from .kripke import enumerate_models
        for n in range(1, max_worlds + 1):
            for m in enumerate_models(n, props):
                ev = Evaluator(m)
                for x in range(1 << n):
                    if ev.sat(x, phi) and not ev.sat(x, psi):
                        return Verdict(False, (m, x))
        return Verdict(True)
    for n in range(1, _bound(max_worlds) + 1):
        hit = _search(n, props, lambda u: u.ext(phi) & ~u.ext(psi))
        if hit is not None:
            m, x = hit
            if not (eval_team(m, x, phi) and not eval_team(m, x, psi)):
                raise AssertionError(f"bulk witness failed re-verification: {m} {x}")
            return Verdict(False, (m, x))
    return Verdict(True)


def oracle_valid(f: Formula, max_worlds: int = 3, *, engine: str = "bulk") -> Verdict:
    """Validity as entailment from the trivially true premise."""
    return oracle_entails(TOP, f, max_worlds, engine=engine)


def oracle_flat(f: Formula, max_worlds: int = 3) -> Verdict:
    """Search for a team where ``f`` disagrees with its member-wise reading."""
    _require_supported(f)
    props = _props(f)
    for n in range(1, _bound(max_worlds) + 1):
        def bad(u):
            e = u.ext(f)
            flat = u.tables["down"][u.tables["sing"][e]]
            return e ^ flat
        hit = _search(n, props, bad)
        if hit is not None:
            m, x = hit
            ev = Evaluator(m)
            member_wise = all(ev.sat(1 << w, f) for w in members(x))
            if ev.sat(x, f) == member_wise:
                raise AssertionError("bulk flatness witness failed re-verification")
            return Verdict(False, (m, x))
    return Verdict(True)


# the operation is called ``eval`` in the command line and docs; kept out of
# ``__all__`` so star-imports do not shadow the builtin
eval = eval_team
