"""Vectorised team semantics over a whole model universe.

For a fixed world count ``n`` and proposition list, every model of
``enumerate_models(n, props)`` gets one row. The value of a formula on a
model is its *extension*: a bit-mask over the ``2**n`` teams, bit ``X``
set iff the team with mask ``X`` satisfies the formula. Connectives become
lookup tables over extensions, built directly from the set-theoretic clauses
(covers, subteams, successor teams) rather than from :mod:`teamevaluator`
code, so the two implementations check each other.

Only ``n <= 3`` is supported: extensions then fit in a byte.
"""

from __future__ import annotations

from collections import OrderedDict
from functools import lru_cache
from typing import Sequence

import numpy as np

from .kripke import KripkeModel, model_count
from .syntax import (And, Bot, Box, Dep, Diamond, Formula, Implies, Neg, Or,
                     Prop, Tensor)

__all__ = ["Universe", "universe", "MAX_WORLDS"]

MAX_WORLDS = 3


def _bits(mask: int):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


@lru_cache(maxsize=None)
def _tables(n: int):
    """Extension-level lookup tables for ``n`` worlds."""
    T = 1 << n                      # number of teams
    E = 1 << T                      # number of extensions
    full = T - 1
    ext = np.arange(E, dtype=np.int64)
    teams = np.arange(T, dtype=np.int64)

    # DOWN[s]: teams contained in world-set s
    down = np.array([sum(1 << x for x in range(T) if x & ~s == 0) for s in range(T)], dtype=np.int64)
    # SING[e]: worlds w whose singleton team is in extension e
    sing = np.zeros(E, dtype=np.int64)
    for w in range(n):
        sing |= ((ext >> (1 << w)) & 1) << w
    # NOSUB[s]: teams with no subteam in the team-set s
    nosub = np.zeros(E, dtype=np.int64)
    for s in range(E):
        r = 0
        for x in range(T):
            if not any(s >> y & 1 for y in range(T) if y & ~x == 0):
                r |= 1 << x
        nosub[s] = r
    # TEN[a, b]: teams covered as Y ∪ Z with Y in a, Z in b
    su = np.zeros((T, E), dtype=np.int64)       # su[y, b] = {y|z : z in b}
    for z in range(T):
        hit = (ext >> z) & 1
        for y in range(T):
            su[y] |= hit << (y | z)
    ten = np.zeros((E, E), dtype=np.int64)
    for a in range(E):
        ys = _bits(a)
        if ys:
            ten[a] = np.bitwise_or.reduce(su[ys], axis=0)
    # relation-dependent tables, one row per relation mask
    R = 1 << (n * n)
    rel = np.arange(R, dtype=np.int64)
    succ = [(rel >> (i * n)) & full for i in range(n)]          # R(i) per relation
    img = np.zeros((R, T), dtype=np.int64)                       # R(X)
    for x in range(T):
        for i in range(n):
            if x >> i & 1:
                img[:, x] |= succ[i]
    # successor teams: SUCC[r, x] = bit-mask over teams Y with X R Y
    succ_teams = np.zeros((R, T), dtype=np.int64)
    for x in range(T):
        for y in range(T):
            ok = (y & ~img[:, x]) == 0
            for i in range(n):
                if x >> i & 1:
                    ok &= (succ[i] & y) != 0
            succ_teams[:, x] |= ok.astype(np.int64) << y
    box = np.zeros((R, E), dtype=np.int64)
    dia = np.zeros((R, E), dtype=np.int64)
    for x in range(T):
        box |= ((ext[None, :] >> img[:, x:x + 1]) & 1) << x
        dia |= ((succ_teams[:, x:x + 1] & ext[None, :]) != 0).astype(np.int64) << x
    # pairs of distinct worlds and the teams that contain both
    pairs = [(w, u) for w in range(n) for u in range(w + 1, n)]
    bad = np.zeros(1 << len(pairs), dtype=np.int64)
    for c in range(1 << len(pairs)):
        r = 0
        for x in range(T):
            if not any(c >> k & 1 and x >> w & 1 and x >> u & 1 for k, (w, u) in enumerate(pairs)):
                r |= 1 << x
        bad[c] = r
    dtype = np.uint8 if E <= 256 else np.uint16
    cast = lambda a: a.astype(dtype)
    return {
        "T": T, "E": E, "full": full, "dtype": dtype, "teams": teams,
        "down": cast(down), "sing": cast(sing), "nosub": cast(nosub), "ten": cast(ten),
        "box": cast(box), "dia": cast(dia), "pairs": pairs, "pairsafe": cast(bad),
        "neg": cast(down[(~sing) & full]), "downclosed": np.array(
            [all(not (e >> x & 1) or all(e >> y & 1 for y in range(T) if y & ~x == 0)
                 for x in range(T)) for e in range(E)], dtype=bool),
    }


class Universe:
    """All models on ``n`` worlds over ``props``, evaluated in bulk.

    ``ext(f)`` returns an array with one extension per model, indexed like
    ``enumerate_models(n, props)``. Results are memoised with a bounded LRU.
    """

    def __init__(self, n: int, props: Sequence[str], cache_size: int = 4096):
        if not 1 <= n <= MAX_WORLDS:
            raise ValueError(f"bulk evaluation supports 1..{MAX_WORLDS} worlds")
        self.n = n
        self.props = tuple(props)
        self.tables = _tables(n)
        self.size = model_count(n, len(self.props))
        shift = n * len(self.props)
        idx = np.arange(self.size, dtype=np.int64)
        self.rel = idx >> shift
        self._val = {}
        t = self.tables
        for k, name in enumerate(self.props):
            vmask = (idx >> (n * (len(self.props) - 1 - k))) & t["full"]
            self._val[name] = vmask
        self._cache: "OrderedDict[Formula, np.ndarray]" = OrderedDict()
        self.cache_size = cache_size
        self._empty = np.full(self.size, 1, dtype=t["dtype"])     # only the empty team
        self._all = np.full(self.size, t["E"] - 1, dtype=t["dtype"])

    def model(self, i: int) -> KripkeModel:
        n = self.n
        rel = int(self.rel[i])
        succ = [(rel >> (k * n)) & ((1 << n) - 1) for k in range(n)]
        return KripkeModel(n, succ, {p: int(self._val[p][i]) for p in self.props})

    def worlds(self, f: Formula) -> np.ndarray:
        """World-mask of singletons satisfying ``f``, per model."""
        return self.tables["sing"][self.ext(f)]

    def ext(self, f: Formula) -> np.ndarray:
        hit = self._cache.get(f)
        if hit is not None:
            self._cache.move_to_end(f)
            return hit
        out = self._compute(f)
        out.flags.writeable = False
        self._cache[f] = out
        if len(self._cache) > self.cache_size:
            self._cache.popitem(last=False)
        return out

    def _compute(self, f: Formula) -> np.ndarray:
        t = self.tables
        if isinstance(f, Prop):
            v = self._val.get(f.name)
            if v is None:
                return self._empty.copy()
            return t["down"][v]
        if isinstance(f, Bot):
            return self._empty.copy()
        if isinstance(f, Neg):
            return t["neg"][self.ext(f.child)]
        if isinstance(f, And):
            return self.ext(f.left) & self.ext(f.right)
        if isinstance(f, Or):
            return self.ext(f.left) | self.ext(f.right)
        if isinstance(f, Tensor):
            return t["ten"][self.ext(f.left), self.ext(f.right)]
        if isinstance(f, Implies):
            return t["nosub"][self.ext(f.left) & ~self.ext(f.right)]
        if isinstance(f, Box):
            return t["box"][self.rel, self.ext(f.child)]
        if isinstance(f, Diamond):
            return t["dia"][self.rel, self.ext(f.child)]
        if isinstance(f, Dep):
            args = [self.worlds(a).astype(np.int64) for a in f.args]
            tgt = self.worlds(f.target).astype(np.int64)
            conflicts = np.zeros(self.size, dtype=np.int64)
            for k, (w, u) in enumerate(t["pairs"]):
                agree = np.ones(self.size, dtype=bool)
                for a in args:
                    agree &= ((a >> w) & 1) == ((a >> u) & 1)
                differ = ((tgt >> w) & 1) != ((tgt >> u) & 1)
                conflicts |= (agree & differ).astype(np.int64) << k
            return t["pairsafe"][conflicts]
        raise TypeError(f"unknown formula node {f!r}")

    def satisfies(self, i: int, x: int, f: Formula) -> bool:
        return bool(self.ext(f)[i] >> x & 1)


_UNIVERSES: dict = {}


def universe(n: int, props: Sequence[str]) -> Universe:
    """Shared :class:`Universe` instance for ``(n, props)``."""
    key = (n, tuple(props))
    u = _UNIVERSES.get(key)
    if u is None:
        u = _UNIVERSES[key] = Universe(n, props)
    return u
