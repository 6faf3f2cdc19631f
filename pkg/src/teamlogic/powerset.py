"""Intuitionistic bi- and tri-relation Kripke models and powerset models.

Points are ``0..n-1`` and, as in :mod:`teamlogic.kripke`, point sets are
``int`` bit-masks. The order is stored downwards: ``down[w]`` is the set of
``v`` with ``w >= v`` (``w`` included). In a powerset model the order is
``⊇``, so ``down[X]`` holds the nonempty subteams of ``X``.

``build_powerset`` puts the nonempty team with mask ``t`` at point ``t - 1``;
``build_full_powerset`` puts team ``t`` at point ``t``. ``labels`` records
the team of each point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .kripke import KripkeModel, is_successor_team, members
from .syntax import (And, Bot, Box, Dep, Diamond, Formula, Implies, Neg, Or,
                     Prop, Tensor, to_text)

__all__ = [
    "IntModel", "IntModelError", "ConditionReport", "CondResult",
    "build_powerset", "build_full_powerset", "sat_int", "sat_int_bullet",
    "extension_int", "check_conditions", "check_pmorphism", "endpoint_map",
    "PreconditionError", "BI_CONDITIONS", "TRI_CONDITIONS", "ALL_CONDITIONS",
    "monotone_valuations", "enumerate_posets", "enumerate_frames", "frame_relations",
    "ext_imp", "ext_box", "ext_dia", "ext_bot", "ext_ten",
]

DEFAULT_CAP = 5

BI_CONDITIONS = ("F1", "F2", "G1", "G1'", "G2", "negative", "saturated")
TRI_CONDITIONS = ("H1", "H2", "H3", "H4", "weakly_negative", "weakly_saturated")
ALL_CONDITIONS = ("F1", "F2", "G1", "G1'", "G2", "H1", "H2", "H3", "H4",
                  "negative", "saturated", "weakly_negative", "weakly_saturated")
_NEEDS_TER = {"H1", "H2", "H3", "H4", "weakly_negative", "weakly_saturated"}


class IntModelError(ValueError):
    """Malformed intuitionistic model; ``witness`` names the offending tuple."""

    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message}: {witness}")
        self.witness = witness


class PreconditionError(ValueError):
    def __init__(self, report: "ConditionReport"):
        super().__init__("model is outside the required class: "
                         + "; ".join(f"{r.name} fails at {r.witness}" for r in report.failed()))
        self.report = report


def _bits(mask: int) -> list[int]:
    return members(mask)


@dataclass(frozen=True, eq=False)
class IntModel:
    """A finite intuitionistic Kripke model ``(W, >=, R[, S], V)``.

    ``ter`` is ``None`` for a bi-relation model and a frozenset of
    ``(w, u, v)`` triples for a tri-relation model. Construction with
    ``check=True`` validates the partial order, monotonicity of ``val`` and
    the frame conditions F1, F2 (and H1 when ``ter`` is present).
    """

    n: int
    down: tuple[int, ...]
    succ: tuple[int, ...]
    val: tuple[tuple[str, int], ...]
    ter: Optional[frozenset] = None
    labels: Optional[tuple[int, ...]] = field(default=None, compare=False)
    absent: int = 0

    def __init__(self, n: int, down: Sequence[int], succ: Sequence[int],
                 val: "Mapping[str, int] | Iterable[tuple[str, int]]" = (),
                 ter: Optional[Iterable[tuple[int, int, int]]] = None,
                 labels: Optional[Sequence[int]] = None, check: bool = True,
                 absent: int = 0):
        if n < 1:
            raise IntModelError("an intuitionistic model needs at least one point")
        items = dict(val.items() if isinstance(val, Mapping) else val)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "down", tuple(down))
        object.__setattr__(self, "succ", tuple(succ))
        object.__setattr__(self, "val", tuple(sorted(items.items())))
        object.__setattr__(self, "ter", None if ter is None else frozenset(map(tuple, ter)))
        object.__setattr__(self, "labels", None if labels is None else tuple(labels))
        object.__setattr__(self, "absent", absent)
        if len(self.down) != n or len(self.succ) != n:
            raise IntModelError("order or relation has the wrong length")
        full = self.full
        if any(m & ~full or m < 0 for m in self.down + self.succ) or any(
                m & ~full or m < 0 for _, m in self.val):
            raise IntModelError("point index out of range")
        if self.ter is not None:
            for t in self.ter:
                if len(t) != 3 or any(not 0 <= i < n for i in t):
                    raise IntModelError("bad ternary triple", t)
        if check:
            self.validate()

    # -- derived structure

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def props(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.val)

    @property
    def is_tri(self) -> bool:
        return self.ter is not None

    def valuation(self, name: str) -> int:
        """``V(name)``; propositions not listed get ``absent`` (empty by default)."""
        for k, m in self.val:
            if k == name:
                return m
        return self.absent

    def geq(self, w: int, v: int) -> bool:
        return bool(self.down[w] >> v & 1)

    @cached_property
    def up(self) -> tuple[int, ...]:
        """``up[v]``: the points ``w`` with ``w >= v``."""
        out = [0] * self.n
        for w in range(self.n):
            for v in _bits(self.down[w]):
                out[v] |= 1 << w
        return tuple(out)

    @cached_property
    def pred(self) -> tuple[int, ...]:
        """``pred[v]``: the points ``w`` with ``w R v``."""
        out = [0] * self.n
        for w in range(self.n):
            for v in _bits(self.succ[w]):
                out[v] |= 1 << w
        return tuple(out)

    @cached_property
    def geq_r(self) -> tuple[int, ...]:
        """``(>= o R)(w)``: points ``v`` with ``w >= u R v`` for some ``u``."""
        return tuple(self.image(self.down[w]) for w in range(self.n))

    @cached_property
    def endpoints(self) -> int:
        return sum(1 << w for w in range(self.n) if self.down[w] == 1 << w)

    @cached_property
    def second_least(self) -> int:
        """Points strictly above some endpoint whose strictly lower points are all endpoints."""
        ends = self.endpoints
        out = 0
        for w in range(self.n):
            below = self.down[w] & ~(1 << w)
            if below & ends and below & ~ends == 0:
                out |= 1 << w
        return out

    def e(self, w: int) -> int:
        """``E_w``: endpoints below ``w``."""
        return self.down[w] & self.endpoints

    def e_bullet(self, w: int) -> int:
        """``E•_w``: second-least points below ``w``."""
        return self.down[w] & self.second_least

    def image(self, x: int) -> int:
        out = 0
        for w in _bits(x):
            out |= self.succ[w]
        return out

    @cached_property
    def splits(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``splits[w]``: the pairs ``(u, v)`` with ``S(w, u, v)``."""
        out: list[list] = [[] for _ in range(self.n)]
        for w, u, v in sorted(self.ter or ()):
            out[w].append((u, v))
        return tuple(map(tuple, out))

    # -- validation

    def validate(self) -> None:
        n, down = self.n, self.down
        for w in range(n):
            if not down[w] >> w & 1:
                raise IntModelError("order is not reflexive", (w, w))
            for v in _bits(down[w]):
                if v != w and down[v] >> w & 1:
                    raise IntModelError("order is not antisymmetric", (w, v))
                if down[v] & ~down[w]:
                    u = _bits(down[v] & ~down[w])[0]
                    raise IntModelError("order is not transitive", (w, v, u))
        for name, mask in self.val:
            for w in _bits(mask):
                bad = down[w] & ~mask
                if bad:
                    raise IntModelError(f"valuation of {name} is not monotone", (w, _bits(bad)[0]))
        for cond in ("F1", "F2") + (("H1",) if self.ter is not None else ()):
            res = _CHECKS[cond](self)
            if not res.holds:
                raise IntModelError(f"condition {cond} fails", res.witness)

    # -- JSON

    def to_json(self) -> dict:
        out = {
            "points": self.n,
            "geq": [[w, v] for w in range(self.n) for v in _bits(self.down[w])],
            "rel": [[w, v] for w in range(self.n) for v in _bits(self.succ[w])],
            "val": {k: _bits(m) for k, m in self.val},
        }
        if self.ter is not None:
            out["ter"] = [list(t) for t in sorted(self.ter)]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_relations(cls, n: int, geq: Iterable, rel: Iterable, val=None,
                       ter=None, check: bool = True) -> "IntModel":
        """Build from pair lists; reflexive ``>=`` pairs may be omitted."""
        down = [1 << w for w in range(n)]
        succ = [0] * n

        def idx(x):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise IntModelError(f"point index {x!r} out of range")
            return x

        for pair in geq:
            if len(pair) != 2:
                raise IntModelError(f"bad order pair {pair!r}")
            down[idx(pair[0])] |= 1 << idx(pair[1])
        for pair in rel:
            if len(pair) != 2:
                raise IntModelError(f"bad relation pair {pair!r}")
            succ[idx(pair[0])] |= 1 << idx(pair[1])
        masks = {}
        for name, pts in (val or {}).items():
            m = 0
            for w in pts:
                m |= 1 << idx(w)
            masks[name] = m
        if ter is not None:
            ter = [tuple(idx(i) for i in t) for t in ter]
            if any(len(t) != 3 for t in ter):
                raise IntModelError("ternary relation entries must be triples")
        return cls(n, down, succ, masks, ter, check=check)

    @classmethod
    def from_json(cls, data) -> "IntModel":
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise IntModelError(f"model is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise IntModelError("model must be a JSON object")
        unknown = set(data) - {"points", "geq", "rel", "ter", "val"}
        if unknown:
            raise IntModelError(f"unknown keys in model: {sorted(unknown)}")
        n = data.get("points")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise IntModelError("'points' must be a positive integer")
        from .syntax import check_name
        val = data.get("val", {})
        if not isinstance(val, dict):
            raise IntModelError("'val' must be an object")
        for name in val:
            try:
                check_name(name)
            except ValueError as exc:
                raise IntModelError(str(exc)) from None
        try:
            return cls.from_relations(n, data.get("geq", []), data.get("rel", []),
                                      val, data.get("ter"))
        except TypeError:
            raise IntModelError("malformed relation lists") from None

    def __repr__(self) -> str:
        return f"IntModel.from_json({self.dumps()!r})"


# ---------------------------------------------------------------------------
# powerset constructions


def _guard(m: KripkeModel, cap: int) -> None:
    if m.n > cap:
        raise ValueError(f"powerset construction limited to {cap} worlds (got {m.n})")


def build_powerset(m: KripkeModel, cap: int = DEFAULT_CAP) -> IntModel:
    """``M°``: nonempty teams ordered by ``⊇`` with the successor-team relation."""
    _guard(m, cap)
    teams = list(range(1, 1 << m.n))
    return _build(m, teams, lambda t: t - 1, ter=False)


def build_full_powerset(m: KripkeModel, cap: int = DEFAULT_CAP) -> IntModel:
    """``M•``: all teams, with ``S(X, Y, Z)`` iff ``X = Y ∪ Z``."""
    _guard(m, cap)
    teams = list(range(1 << m.n))
    return _build(m, teams, lambda t: t, ter=True)


def _build(m: KripkeModel, teams, point, ter: bool) -> IntModel:
    n = len(teams)
    down = [0] * n
    succ = [0] * n
    for x in teams:
        i = point(x)
        for y in teams:
            if y & ~x == 0:
                down[i] |= 1 << point(y)
            if is_successor_team(m, x, y):
                succ[i] |= 1 << point(y)
    val = {}
    for name in m.props:
        vm = m.valuation(name)
        val[name] = sum(1 << point(x) for x in teams if x & ~vm == 0)
    triples = None
    if ter:
        triples = [(point(y | z), point(y), point(z)) for y in teams for z in teams]
    # a proposition the source model does not mention is false at every world,
    # so only the empty team (if it is a point) satisfies it
    absent = 1 << point(0) if 0 in teams else 0
    return IntModel(n, down, succ, val, triples, labels=teams, check=False, absent=absent)


# ---------------------------------------------------------------------------
# satisfaction, clause by clause on extensions (point masks)


def ext_bot(im: IntModel, bullet: bool = False) -> int:
    """``bot`` holds nowhere, or at the endpoints under the bullet semantics."""
    return im.endpoints if bullet else 0


def ext_imp(im: IntModel, a: int, b: int) -> int:
    """``->``: every point below ``w`` in ``a`` is in ``b``."""
    bad = a & ~b
    return sum(1 << w for w in range(im.n) if im.down[w] & bad == 0)


def ext_box(im: IntModel, a: int) -> int:
    """``[]``: every ``v`` with ``w >= u R v`` is in ``a``."""
    g = im.geq_r
    return sum(1 << w for w in range(im.n) if g[w] & ~a == 0)


def ext_dia(im: IntModel, a: int) -> int:
    """``<>``: some ``R``-successor of ``w`` is in ``a``."""
    return sum(1 << w for w in range(im.n) if im.succ[w] & a)


def ext_ten(im: IntModel, a: int, b: int) -> int:
    """Binary diamond: some ``S(w, u, v)`` with ``u`` in ``a`` and ``v`` in ``b``."""
    out = 0
    for w, pairs in enumerate(im.splits):
        if any(a >> u & 1 and b >> v & 1 for u, v in pairs):
            out |= 1 << w
    return out


def _check_language(f: Formula, bullet: bool) -> None:
    for node in _nodes(f):
        if isinstance(node, Dep):
            raise ValueError(f"dependence atoms are outside the single-world language: {to_text(f)}")
        if isinstance(node, Tensor) and not bullet:
            raise ValueError(f"tensor needs the bullet semantics: {to_text(f)}")


def _nodes(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(g.children)


def extension_int(im: IntModel, f: Formula, bullet: bool = False, memo=None) -> int:
    """Mask of the points forcing ``f`` (``⊩``, or ``⊩•`` with ``bullet``)."""
    if memo is None:
        _check_language(f, bullet)
        if bullet and im.ter is None:
            raise ValueError("the bullet semantics needs a ternary relation")
        memo = {}
    hit = memo.get(f)
    if hit is not None:
        return hit
    rec = lambda g: extension_int(im, g, bullet, memo)
    if isinstance(f, Prop):
        out = im.valuation(f.name)
    elif isinstance(f, Bot):
        out = ext_bot(im, bullet)
    elif isinstance(f, Neg):
        out = ext_imp(im, rec(f.child), ext_bot(im, bullet))
    elif isinstance(f, And):
        out = rec(f.left) & rec(f.right)
    elif isinstance(f, Or):
        out = rec(f.left) | rec(f.right)
    elif isinstance(f, Implies):
        out = ext_imp(im, rec(f.left), rec(f.right))
    elif isinstance(f, Box):
        out = ext_box(im, rec(f.child))
    elif isinstance(f, Diamond):
        out = ext_dia(im, rec(f.child))
    elif isinstance(f, Tensor):
        out = ext_ten(im, rec(f.left), rec(f.right))
    else:
        raise ValueError(f"unsupported node {f!r}")
    memo[f] = out
    return out


def sat_int(im: IntModel, w: int, f: Formula) -> bool:
    """``im, w ⊩ f`` for formulas without dependence atoms and tensors."""
    if not 0 <= w < im.n:
        raise ValueError(f"point {w} out of range")
    return bool(extension_int(im, f) >> w & 1)


def sat_int_bullet(im: IntModel, w: int, f: Formula) -> bool:
    """``im, w ⊩• f``: ``bot`` holds at endpoints, ``|`` is read through ``S``."""
    if not 0 <= w < im.n:
        raise ValueError(f"point {w} out of range")
    return bool(extension_int(im, f, bullet=True) >> w & 1)


# ---------------------------------------------------------------------------
# conditions


@dataclass(frozen=True)
class CondResult:
    name: str
    holds: bool
    witness: Optional[tuple] = None

    def to_json(self) -> dict:
        out = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass(frozen=True)
class ConditionReport:
    results: tuple[CondResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.results)

    def __getitem__(self, name: str) -> CondResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name) -> bool:
        return any(r.name == name for r in self.results)

    def failed(self) -> list[CondResult]:
        return [r for r in self.results if not r.holds]

    def to_json(self) -> dict:
        return {r.name: r.to_json() for r in self.results}


_OK = None


def _res(name, witness=_OK):
    return CondResult(name, witness is None, witness)


def _f1(im):
    for w in range(im.n):
        for w2 in _bits(im.down[w]):
            for v in _bits(im.succ[w]):
                if not im.down[v] & im.succ[w2]:
                    return _res("F1", (w, w2, v))
    return _res("F1")


def _f2(im):
    for w in range(im.n):
        for v in _bits(im.succ[w]):
            for v2 in _bits(im.down[v]):
                if not im.down[w] & im.pred[v2]:
                    return _res("F2", (w, v, v2))
    return _res("F2")


def _g1_prime(im):
    for w in range(im.n):
        s = im.geq_r[w]
        for u in _bits(s):
            for v in _bits(s):
                if v > u and not im.up[u] & im.up[v] & s:
                    return _res("G1'", (w, u, v))
    return _res("G1'")


def _g1(im):
    # explore the distinct sets of common upper bounds reachable by adding
    # elements of (>= o R)(w) one at a time; an empty set is a violation
    for w in range(im.n):
        s = im.geq_r[w]
        seen = {s: ()}
        todo = [s]
        while todo:
            bound = todo.pop()
            for x in _bits(s):
                nxt = bound & im.up[x]
                if nxt not in seen:
                    subset = seen[bound] + (x,)
                    if nxt == 0:
                        return _res("G1", (w,) + tuple(sorted(set(subset))))
                    seen[nxt] = subset
                    todo.append(nxt)
    return _res("G1")


def _subsets(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _g2(im):
    # with a ternary relation, endpoints and E_w become second-least points and E•_w
    pts, ew = ((im.second_least, im.e_bullet) if im.ter is not None
               else (im.endpoints, im.e))
    for w in range(im.n):
        base = ew(w)
        cand = im.image(base) & pts
        for e in _subsets(cand):
            if any(not e & im.succ[v] for v in _bits(base)):
                continue
            if not any(ew(t) & ~e == 0 for t in _bits(im.succ[w])):
                return _res("G2", (w, tuple(_bits(e))))
    return _res("G2")


def _h1(im):
    for w, pairs in enumerate(im.splits):
        for u, v in pairs:
            for w2 in _bits(im.down[w]):
                if not any(im.down[u] >> u2 & 1 and im.down[v] >> v2 & 1
                           for u2, v2 in im.splits[w2]):
                    return _res("H1", (w, u, v, w2))
    return _res("H1")


def _h2(im):
    eb = [im.e_bullet(w) for w in range(im.n)]
    ter = im.ter
    for w in range(im.n):
        for u in range(im.n):
            for v in range(im.n):
                if ((w, u, v) in ter) != (eb[w] == eb[u] | eb[v]):
                    return _res("H2", (w, u, v))
    return _res("H2")


def _h3(im):
    ends = im.endpoints
    for e in _bits(ends):
        for w in range(im.n):
            if (im.succ[e] >> w & 1 or im.succ[w] >> e & 1) and not ends >> w & 1:
                return _res("H3", (e, w))
    return _res("H3")


def _h4(im):
    for e in _bits(im.endpoints):
        if not im.succ[e] >> e & 1:
            return _res("H4", (e,))
    return _res("H4")


def _negative(im, bullet=False):
    name = "weakly_negative" if bullet else "negative"
    bot = ext_bot(im, bullet)
    for p, a in im.val:
        nn = ext_imp(im, ext_imp(im, a, bot), bot)
        if a != nn:
            return _res(name, (_bits(a ^ nn)[0], p))
        if bullet and im.endpoints & ~a:
            return _res(name, (_bits(im.endpoints & ~a)[0], p))
    return _res(name)


def _saturated(im):
    for w in range(im.n):
        ew = im.e(w)
        if not ew:
            return _res("saturated", (w, ()))
        realised = {im.e(v) for v in _bits(im.down[w])}
        for e in _subsets(ew):
            if e and e not in realised:
                return _res("saturated", (w, tuple(_bits(e))))
    return _res("saturated")


def _weakly_saturated(im):
    ends = im.endpoints
    for w in range(im.n):
        ew = im.e_bullet(w)
        if not ew and not ends >> w & 1:
            return _res("weakly_saturated", (w, ()))
        realised = {im.e_bullet(v) for v in _bits(im.down[w])}
        for e in _subsets(ew):
            if e not in realised:
                return _res("weakly_saturated", (w, tuple(_bits(e))))
    return _res("weakly_saturated")


_CHECKS = {
    "F1": _f1, "F2": _f2, "G1": _g1, "G1'": _g1_prime, "G2": _g2,
    "H1": _h1, "H2": _h2, "H3": _h3, "H4": _h4,
    "negative": _negative, "saturated": _saturated,
    "weakly_negative": lambda im: _negative(im, bullet=True),
    "weakly_saturated": _weakly_saturated,
}


def check_conditions(im: IntModel, which: Optional[Iterable[str]] = None) -> ConditionReport:
    """Decide the requested conditions by direct evaluation.

    ``which`` defaults to the bi-relation class conditions, or the
    tri-relation ones when ``im`` has a ternary relation. On a tri-relation
    model G2 is read with second-least points and ``E•_w``.
    """
    if which is None:
        which = TRI_CONDITIONS if im.ter is not None else BI_CONDITIONS
    which = list(which)
    for name in which:
        if name not in _CHECKS:
            raise ValueError(f"unknown condition {name!r}")
        if name in _NEEDS_TER and im.ter is None:
            raise ValueError(f"condition {name} needs a ternary relation")
    return ConditionReport(tuple(_CHECKS[name](im) for name in which))


# ---------------------------------------------------------------------------
# p-morphisms


def check_pmorphism(src: IntModel, dst: IntModel, f: Sequence[int],
                    flavor: str = "bi") -> ConditionReport:
    """Check P1-P6, plus Q1-Q3 for the ``tri`` flavor, for the point map ``f``."""
    if flavor not in ("bi", "tri"):
        raise ValueError("flavor must be 'bi' or 'tri'")
    f = tuple(f)
    if len(f) != src.n or any(not 0 <= x < dst.n for x in f):
        raise ValueError("point map must send every source point into the target")
    n1 = src.n
    out = []

    def first(name, gen):
        for wit in gen:
            out.append(_res(name, wit))
            return
        out.append(_res(name))

    props = sorted(set(src.props) | set(dst.props))
    first("P1", ((w, p) for w in range(n1) for p in props
                 if bool(src.valuation(p) >> w & 1) != bool(dst.valuation(p) >> f[w] & 1)))
    first("P2", ((w, v) for w in range(n1) for v in _bits(src.down[w])
                 if not dst.down[f[w]] >> f[v] & 1))
    first("P3", ((w, v) for w in range(n1) for v in _bits(src.succ[w])
                 if not dst.succ[f[w]] >> f[v] & 1))
    fimg = [sum(1 << f[v] for v in _bits(mask)) for mask in src.down]
    first("P4", ((w, v2) for w in range(n1) for v2 in _bits(dst.down[f[w]])
                 if not fimg[w] >> v2 & 1))
    first("P5", ((w, v2) for w in range(n1) for v2 in _bits(dst.succ[f[w]])
                 if not any(dst.down[v2] >> f[v] & 1 for v in _bits(src.succ[w]))))
    first("P6", ((w, v2) for w in range(n1) for v2 in _bits(dst.geq_r[f[w]])
                 if not any(dst.down[f[v]] >> v2 & 1 for v in _bits(src.geq_r[w]))))
    if flavor == "tri":
        if src.ter is None or dst.ter is None:
            raise ValueError("the tri flavor needs ternary relations on both models")
        first("Q1", ((w, u, v) for w, u, v in sorted(src.ter)
                     if (f[w], f[u], f[v]) not in dst.ter))
        preimg = {}
        for w, u, v in src.ter:
            preimg.setdefault(w, set()).add((f[u], f[v]))
        first("Q2", ((w, u2, v2) for w in range(n1) for u2, v2 in dst.splits[f[w]]
                     if (u2, v2) not in preimg.get(w, ())))
        first("Q3", ((w,) for w in range(n1)
                     if bool(src.endpoints >> w & 1) != bool(dst.endpoints >> f[w] & 1)))
    return ConditionReport(tuple(out))


_BI_CLASS = ("F1", "F2", "G1", "G2", "negative", "saturated")
_TRI_CLASS = ("F1", "F2", "G1", "G2", "H1", "H2", "H3", "H4",
              "weakly_negative", "weakly_saturated")


def endpoint_map(im: IntModel, flavor: str = "bi", check: bool = True
                 ) -> tuple[KripkeModel, tuple[int, ...]]:
    """The classical model ``N`` read off ``im`` and the map into its powerset model.

    ``bi``: ``N`` lives on the endpoints and ``w`` goes to the point of
    ``E_w`` in ``N°``. ``tri``: ``N`` lives on the second-least points and
    ``w`` goes to ``E•_w`` in ``N•``. Worlds of ``N`` follow point order.
    """
    if flavor not in ("bi", "tri"):
        raise ValueError("flavor must be 'bi' or 'tri'")
    if flavor == "tri" and im.ter is None:
        raise ValueError("the tri flavor needs a ternary relation")
    if check:
        report = check_conditions(im, _BI_CLASS if flavor == "bi" else _TRI_CLASS)
        if not report.ok:
            raise PreconditionError(report)
    base = im.endpoints if flavor == "bi" else im.second_least
    worlds = _bits(base)
    if not worlds:
        raise ValueError("the model has no points to build a classical model on")
    index = {w: i for i, w in enumerate(worlds)}
    succ = [sum(1 << index[v] for v in _bits(im.succ[w] & base)) for w in worlds]
    val = {p: sum(1 << index[w] for w in worlds if m >> w & 1) for p, m in im.val}
    n_model = KripkeModel(len(worlds), succ, val)

    def team_of(mask):
        return sum(1 << index[v] for v in _bits(mask))

    if flavor == "bi":
        fmap = tuple(team_of(im.e(w)) - 1 for w in range(im.n))
    else:
        fmap = tuple(team_of(im.e_bullet(w)) for w in range(im.n))
    return n_model, fmap


# ---------------------------------------------------------------------------
# finite frames


def monotone_valuations(im: IntModel) -> list[int]:
    """All point sets closed under ``>=``-successors (candidate ``V(p)``)."""
    out = []
    for s in range(1 << im.n):
        if all(im.down[w] & ~s == 0 for w in _bits(s)):
            out.append(s)
    return out


def _canonical(n: int, down: tuple) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        img = [0] * n
        for w in range(n):
            img[perm[w]] = sum(1 << perm[v] for v in _bits(down[w]))
        key = tuple(img)
        if best is None or key < best:
            best = key
    return best


def enumerate_posets(n: int) -> list[tuple[int, ...]]:
    """One ``down``-mask tuple per partial order on ``n`` points, up to isomorphism."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    found = set()
    for bits in range(1 << len(pairs)):
        down = [1 << w for w in range(n)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                down[i] |= 1 << j
        ok = True
        for w in range(n):
            for v in _bits(down[w]):
                if (v != w and down[v] >> w & 1) or down[v] & ~down[w]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.add(_canonical(n, tuple(down)))
    return sorted(found)


def frame_relations(n: int, down: Sequence[int]) -> np.ndarray:
    """Relation masks ``R`` (bit ``i*n + j`` is ``i R j``) satisfying F1 and
    F2 over the order ``down``, screened for all ``2**(n*n)`` masks at once."""
    rel = np.arange(1 << (n * n), dtype=np.int64)
    full = (1 << n) - 1
    succ = [(rel >> (i * n)) & full for i in range(n)]
    ok = np.ones(rel.shape, dtype=bool)
    for w in range(n):
        for v in range(n):
            has = ((succ[w] >> v) & 1).astype(bool)
            for w2 in _bits(down[w]):
                # F1: w >= w2 and w R v need some v2 <= v with w2 R v2
                ok &= ~has | ((succ[w2] & down[v]) != 0)
            for v2 in _bits(down[v]):
                # F2: w R v >= v2 needs some w2 <= w with w2 R v2
                reach = np.zeros(rel.shape, dtype=bool)
                for w2 in _bits(down[w]):
                    reach |= ((succ[w2] >> v2) & 1).astype(bool)
                ok &= ~has | reach
    return rel[ok]


def enumerate_frames(n: int) -> Iterator[IntModel]:
    """Every bi-relation frame on ``n`` points: posets up to isomorphism,
    combined with every relation ``R`` satisfying F1 and F2."""
    full = (1 << n) - 1
    for down in enumerate_posets(n):
        for rel in frame_relations(n, down).tolist():
            succ = tuple((rel >> (i * n)) & full for i in range(n))
            yield IntModel(n, down, succ, check=False)
