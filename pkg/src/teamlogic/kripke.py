"""Finite classical Kripke models and teams.

Worlds are the indices ``0..n-1`` and every world-set (a team, a successor
set, a valuation) is an ``int`` bit-mask with bit ``w`` standing for world
``w``. Teams therefore support O(1) union, intersection and subset tests.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "KripkeModel", "team", "members", "subteams", "parse_team", "format_team",
    "image", "is_successor_team", "successor_teams", "enumerate_models",
    "model_count", "model_index", "disjoint_union", "ModelFormatError",
]


class ModelFormatError(ValueError):
    pass


def team(worlds: Iterable[int]) -> int:
    mask = 0
    for w in worlds:
        if w < 0:
            raise ValueError(f"negative world index {w}")
        mask |= 1 << w
    return mask


def members(mask: int) -> list[int]:
    out = []
    w = 0
    while mask:
        if mask & 1:
            out.append(w)
        mask >>= 1
        w += 1
    return out


def subteams(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, starting with ``mask`` itself and ending with 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def parse_team(text: str, n: int | None = None) -> int:
    """Comma-separated world indices; the empty string denotes the empty team."""
    text = text.strip()
    if not text:
        return 0
    try:
        idx = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ModelFormatError(f"bad team literal {text!r}") from None
    for w in idx:
        if w < 0 or (n is not None and w >= n):
            raise ModelFormatError(f"world {w} out of range in team {text!r}")
    return team(idx)


def format_team(mask: int) -> str:
    return ",".join(map(str, members(mask)))


@dataclass(frozen=True)
class KripkeModel:
    """A finite model ``(W, R, V)`` with ``W = {0..n-1}``.

    ``succ[w]`` is the successor mask ``R(w)``; ``val`` maps proposition
    names to world masks. Propositions missing from ``val`` are false
    everywhere.
    """

    n: int
    succ: tuple[int, ...]
    val: tuple[tuple[str, int], ...]

    def __init__(self, n: int, succ: Sequence[int] | None = None,
                 val: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        if n < 1:
            raise ModelFormatError("a model needs at least one world")
        full = (1 << n) - 1
        succ = tuple(succ) if succ is not None else (0,) * n
        if len(succ) != n:
            raise ModelFormatError("successor list has the wrong length")
        if any(s & ~full or s < 0 for s in succ):
            raise ModelFormatError("successor index out of range")
        items = dict(val.items() if isinstance(val, Mapping) else val)
        for name, mask in items.items():
            if mask & ~full or mask < 0:
                raise ModelFormatError(f"valuation of {name} out of range")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "succ", succ)
        object.__setattr__(self, "val", tuple(sorted(items.items())))

    # -- basic accessors

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def props(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.val)

    def valuation(self, name: str) -> int:
        for k, mask in self.val:
            if k == name:
                return mask
        return 0

    def edges(self) -> list[tuple[int, int]]:
        return [(w, v) for w in range(self.n) for v in members(self.succ[w])]

    def image(self, x: int) -> int:
        return image(self, x)

    # -- JSON

    def to_json(self) -> dict:
        return {
            "worlds": self.n,
            "rel": [[w, v] for w, v in self.edges()],
            "val": {name: members(mask) for name, mask in self.val},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "KripkeModel":
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ModelFormatError(f"model is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ModelFormatError("model must be a JSON object")
        unknown = set(data) - {"worlds", "rel", "val"}
        if unknown:
            raise ModelFormatError(f"unknown keys in model: {sorted(unknown)}")
        n = data.get("worlds")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ModelFormatError("'worlds' must be a positive integer")

        def index(x):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise ModelFormatError(f"world index {x!r} out of range")
            return x

        succ = [0] * n
        for pair in data.get("rel", []):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ModelFormatError(f"bad edge {pair!r}")
            w, v = index(pair[0]), index(pair[1])
            succ[w] |= 1 << v
        val = {}
        raw = data.get("val", {})
        if not isinstance(raw, dict):
            raise ModelFormatError("'val' must be an object")
        from .syntax import check_name
        for name, worlds in raw.items():
            try:
                check_name(name)
            except ValueError as exc:
                raise ModelFormatError(str(exc)) from None
            if not isinstance(worlds, list):
                raise ModelFormatError(f"valuation of {name} must be a list")
            val[name] = team(index(w) for w in worlds)
        return cls(n, succ, val)

    def __repr__(self) -> str:
        return f"KripkeModel.from_json({self.dumps()!r})"


def image(m: KripkeModel, x: int) -> int:
    """``R(X)``: the worlds reachable in one step from some member of ``x``."""
    out = 0
    w = 0
    while x:
        if x & 1:
            out |= m.succ[w]
        x >>= 1
        w += 1
    return out


def is_successor_team(m: KripkeModel, x: int, y: int) -> bool:
    """``X R Y``: ``Y ⊆ R(X)`` and ``Y`` meets ``R(w)`` for every ``w`` in ``X``."""
    if y & ~image(m, x):
        return False
    return all(y & m.succ[w] for w in members(x))


def successor_teams(m: KripkeModel, x: int) -> Iterator[int]:
    """Every successor team of ``x`` (naive enumeration over subsets of ``R(X)``)."""
    for y in subteams(image(m, x)):
        if is_successor_team(m, x, y):
            yield y


def model_count(n: int, nprops: int) -> int:
    return 1 << (n * n + n * nprops)


def enumerate_models(n: int, props: Sequence[str]) -> Iterator[KripkeModel]:
    """Every model on ``n`` worlds over ``props``, each exactly once.

    Order: relation bit-mask first (bit ``i*n + j`` is the edge ``i -> j``),
    then the valuation masks, with the first proposition varying slowest.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    props = list(props)
    vals = range(1 << n)
    for rel in range(1 << (n * n)):
        succ = tuple((rel >> (i * n)) & ((1 << n) - 1) for i in range(n))
        for masks in itertools.product(vals, repeat=len(props)):
            yield KripkeModel(n, succ, zip(props, masks))


def model_index(m: KripkeModel, props: Sequence[str]) -> int:
    """Position of ``m`` in ``enumerate_models(m.n, props)``."""
    n = m.n
    rel = 0
    for i, s in enumerate(m.succ):
        rel |= s << (i * n)
    idx = rel
    for name in props:
        idx = (idx << n) | m.valuation(name)
    return idx


def disjoint_union(ms: Sequence[KripkeModel]) -> tuple[KripkeModel, list[int]]:
    """Disjoint union with worlds renumbered by per-input offsets."""
    if not ms:
        raise ValueError("disjoint union of no models")
    offsets = []
    succ: list[int] = []
    val: dict[str, int] = {}
    off = 0
    for m in ms:
        offsets.append(off)
        succ.extend(s << off for s in m.succ)
        for name, mask in m.val:
            val[name] = val.get(name, 0) | (mask << off)
        off += m.n
    return KripkeModel(off, succ, val), offsets
