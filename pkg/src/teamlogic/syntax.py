"""Formula syntax for the modal team logics MD, MD+, MD-or, MID and MT0.

Formulas are immutable, hash-consed trees: building the same formula twice
returns the same object, so ``is`` and ``==`` coincide and formulas make cheap
dictionary keys for the evaluators' memo tables.

Concrete grammar (precedence high to low)::

    atoms     p, q1, foo_bar      lower-case identifiers
    bot       falsum
    ~ [] <>   negation, box, diamond (prefix)
    &         conjunction                    left-assoc
    |         tensor (split disjunction)     left-assoc
    \\/        intuitionistic disjunction     left-assoc
    ->        intuitionistic implication     right-assoc
    =(a1,...,an,b)  dependence atom, last argument is the determined one
"""

from __future__ import annotations

import enum
import re
import threading
import weakref
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "Formula", "Prop", "Bot", "Dep", "Neg", "And", "Tensor", "Or", "Implies",
    "Box", "Diamond", "BOT", "TOP", "Fragment", "Violation", "ParseError",
    "FragmentError", "parse", "to_text", "fragment_check", "in_fragment",
    "is_classical", "conj", "tensor_all", "disj", "subformulas",
    "dep_occurrences", "subformula_at", "replace_at", "desugar_neg",
    "modal_depth",
]


_INTERN: "weakref.WeakValueDictionary[tuple, Formula]" = weakref.WeakValueDictionary()
_INTERN_LOCK = threading.Lock()

_IDENT = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class Formula:
    """Base class of all formula nodes.

    Nodes are interned, so equality is identity. ``children`` lists the
    immediate subformulas in left-to-right order; for a dependence atom the
    arguments come first and the target last.
    """

    __slots__ = ("__weakref__", "_key", "children", "depth", "props")

    _tag = ""

    def __new__(cls, *args):
        key = (cls._tag,) + cls._normalize(*args)
        with _INTERN_LOCK:
            node = _INTERN.get(key)
            if node is None:
                node = object.__new__(cls)
                node._key = key
                node._init(*key[1:])
                _INTERN[key] = node
        return node

    @classmethod
    def _normalize(cls, *args):
        return args

    def _init(self, *fields) -> None:
        self.children = tuple(f for f in fields if isinstance(f, Formula))
        self.depth = 1 + max((c.depth for c in self.children), default=0)
        props: frozenset = frozenset()
        for c in self.children:
            props |= c.props
        self.props = props

    # interned nodes are reconstructed through the constructor when unpickled
    def __reduce__(self):
        return (type(self), self._key[1:])

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __repr__(self) -> str:
        return f"parse({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)

    def __lt__(self, other: "Formula") -> bool:
        return to_text(self) < to_text(other)


class Prop(Formula):
    __slots__ = ("name",)
    _tag = "prop"

    @classmethod
    def _normalize(cls, name):
        if not isinstance(name, str) or not name:
            raise ValueError(f"bad proposition name {name!r}")
        return (name,)

    def _init(self, name):
        self.name = name
        self.children = ()
        self.depth = 1
        self.props = frozenset([name])


class Bot(Formula):
    __slots__ = ()
    _tag = "bot"

    def _init(self):
        self.children = ()
        self.depth = 1
        self.props = frozenset()


class Dep(Formula):
    """Dependence atom ``=(args..., target)``; ``args`` may be empty."""

    __slots__ = ("args", "target")
    _tag = "dep"

    @classmethod
    def _normalize(cls, args, target):
        return (tuple(args), target)

    def _init(self, args, target):
        self.args = args
        self.target = target
        Formula._init(self, *args, target)


class _Unary(Formula):
    __slots__ = ("child",)

    def _init(self, child):
        if not isinstance(child, Formula):
            raise TypeError("formula expected")
        self.child = child
        Formula._init(self, child)


class _Binary(Formula):
    __slots__ = ("left", "right")

    def _init(self, left, right):
        if not (isinstance(left, Formula) and isinstance(right, Formula)):
            raise TypeError("formula expected")
        self.left = left
        self.right = right
        Formula._init(self, left, right)


class Neg(_Unary):
    __slots__ = ()
    _tag = "neg"


class Box(_Unary):
    __slots__ = ()
    _tag = "box"


class Diamond(_Unary):
    __slots__ = ()
    _tag = "dia"


class And(_Binary):
    __slots__ = ()
    _tag = "and"


class Tensor(_Binary):
    __slots__ = ()
    _tag = "tensor"


class Or(_Binary):
    __slots__ = ()
    _tag = "or"


class Implies(_Binary):
    __slots__ = ()
    _tag = "imp"


BOT = Bot()
TOP = Neg(BOT)


def conj(*parts: Formula) -> Formula:
    """Left-associated conjunction of one or more formulas."""
    if not parts:
        raise ValueError("empty conjunction")
    acc = parts[0]
    for f in parts[1:]:
        acc = And(acc, f)
    return acc


def tensor_all(*parts: Formula) -> Formula:
    """Left-associated tensor of one or more formulas."""
    if not parts:
        raise ValueError("empty tensor")
    acc = parts[0]
    for f in parts[1:]:
        acc = Tensor(acc, f)
    return acc


def disj(*parts: Formula) -> Formula:
    """Left-associated intuitionistic disjunction of one or more formulas."""
    if not parts:
        raise ValueError("empty disjunction")
    acc = parts[0]
    for f in parts[1:]:
        acc = Or(acc, f)
    return acc


# ---------------------------------------------------------------------------
# fragments


class Fragment(enum.Enum):
    MD = "md"
    MDplus = "mdplus"
    MDor = "mdor"
    MID = "mid"
    MT0 = "mt0"
    K = "k"
    KArrow = "karrow"

    @classmethod
    def parse(cls, text: "str | Fragment") -> "Fragment":
        if isinstance(text, Fragment):
            return text
        key = text.strip().lower().replace("+", "plus").replace("∨", "or")
        aliases = {"mdv": "mdor", "md_or": "mdor", "md_plus": "mdplus",
                   "mt₀": "mt0", "k_arrow": "karrow", "k->": "karrow"}
        key = aliases.get(key, key)
        for frag in cls:
            if frag.value == key:
                return frag
        raise ValueError(f"unknown fragment {text!r}")

    @property
    def is_md_family(self) -> bool:
        return self in (Fragment.MD, Fragment.MDplus, Fragment.MDor)


@dataclass(frozen=True)
class Violation:
    """A fragment violation: ``path`` is the child-index path to the node."""

    path: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        where = "/".join(map(str, self.path)) or "root"
        return f"at {where}: {self.message}"


class FragmentError(ValueError):
    def __init__(self, formula: Formula, fragment: Fragment, violations):
        self.formula = formula
        self.fragment = fragment
        self.violations = list(violations)
        detail = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{to_text(formula)} is not in {fragment.value}: {detail}")


_K_NODES = (Prop, Bot, Neg, And, Tensor, Box, Diamond)
_KARROW_NODES = (Prop, Bot, Neg, And, Implies, Box, Diamond)
_MT0_CLASSICAL_NODES = (Prop, Bot, Neg, And, Tensor, Implies, Box, Diamond)

_CLASSICAL_NODES = {
    Fragment.MD: _K_NODES,
    Fragment.MDplus: _K_NODES,
    Fragment.MDor: _K_NODES,
    Fragment.K: _K_NODES,
    Fragment.MID: _KARROW_NODES,
    Fragment.KArrow: _KARROW_NODES,
    Fragment.MT0: _MT0_CLASSICAL_NODES,
}

_classical_cache: dict = {}


def is_classical(f: Formula, frag: "Fragment | str" = Fragment.MT0) -> bool:
    """True iff ``f`` lies in the classical sub-grammar associated with ``frag``.

    K (``p | bot | ~ | & | | | [] | <>``) serves MD, MD+ and MD-or; KArrow
    (``p | bot | & | -> | [] | <>``, with ``~a`` read as ``a -> bot``) serves
    MID; MT0 admits the union of the two.
    """
    frag = Fragment.parse(frag)
    key = (f, frag)
    hit = _classical_cache.get(key)
    if hit is not None:
        return hit
    allowed = _CLASSICAL_NODES[frag]
    res = isinstance(f, allowed) and all(is_classical(c, frag) for c in f.children)
    if len(_classical_cache) > 200_000:
        _classical_cache.clear()
    _classical_cache[key] = res
    return res


def fragment_check(f: Formula, frag: "Fragment | str") -> list[Violation]:
    """Return the list of violations of ``frag``'s grammar (empty when well formed)."""
    frag = Fragment.parse(frag)
    out: list[Violation] = []
    if frag in (Fragment.K, Fragment.KArrow):
        _check_classical(f, frag, (), out)
    else:
        _check(f, frag, (), out)
    return out


def in_fragment(f: Formula, frag: "Fragment | str") -> bool:
    return not fragment_check(f, frag)


def _check_classical(f, frag, path, out):
    if not isinstance(f, _CLASSICAL_NODES[frag]):
        out.append(Violation(path, f"{type(f).__name__} is not in the classical grammar of {frag.value}"))
        return
    for i, c in enumerate(f.children):
        _check_classical(c, frag, path + (i,), out)


def _check(f, frag, path, out):
    md_family = frag.is_md_family
    if isinstance(f, Dep):
        for i, a in enumerate(f.children):
            if frag is Fragment.MD:
                if not isinstance(a, Prop):
                    out.append(Violation(path + (i,), "non-propositional dep argument"))
            elif not is_classical(a, frag):
                out.append(Violation(path + (i,), "non-classical dep argument"))
        return
    if isinstance(f, Or) and frag in (Fragment.MD, Fragment.MDplus):
        out.append(Violation(path, f"intuitionistic disjunction is not in {frag.value}"))
    elif isinstance(f, Implies) and md_family:
        out.append(Violation(path, f"implication is not in {frag.value}"))
    elif isinstance(f, Tensor) and frag is Fragment.MID:
        out.append(Violation(path, "tensor is not in mid"))
    elif isinstance(f, Neg) and md_family and not is_classical(f.child, frag):
        out.append(Violation(path, "negation of a non-classical formula"))
    for i, c in enumerate(f.children):
        _check(c, frag, path + (i,), out)


# ---------------------------------------------------------------------------
# traversal helpers


def subformulas(f: Formula) -> Iterator[tuple[tuple[int, ...], Formula]]:
    """Yield ``(path, node)`` in pre-order, left to right."""
    stack = [((), f)]
    while stack:
        path, node = stack.pop()
        yield path, node
        for i in range(len(node.children) - 1, -1, -1):
            stack.append((path + (i,), node.children[i]))


def dep_occurrences(f: Formula) -> list[tuple[tuple[int, ...], Dep]]:
    """Dependence-atom occurrences as ``(path, atom)`` in pre-order."""
    return [(p, n) for p, n in subformulas(f) if isinstance(n, Dep)]


def subformula_at(f: Formula, path) -> Formula:
    for i in path:
        f = f.children[i]
    return f


def _rebuild(node: Formula, children) -> Formula:
    if isinstance(node, Dep):
        return Dep(children[:-1], children[-1])
    if isinstance(node, _Unary):
        return type(node)(children[0])
    if isinstance(node, _Binary):
        return type(node)(children[0], children[1])
    return node


def replace_at(f: Formula, path, new: Formula) -> Formula:
    if not path:
        return new
    i = path[0]
    kids = list(f.children)
    kids[i] = replace_at(kids[i], path[1:], new)
    return _rebuild(f, kids)


def map_children(f: Formula, fn) -> Formula:
    if not f.children:
        return f
    return _rebuild(f, [fn(c) for c in f.children])


def desugar_neg(f: Formula) -> Formula:
    """Rewrite every ``~a`` as ``a -> bot`` (the reading used with implication)."""
    if isinstance(f, Neg):
        return Implies(desugar_neg(f.child), BOT)
    return map_children(f, desugar_neg)


def modal_depth(f: Formula) -> int:
    inner = max((modal_depth(c) for c in f.children), default=0)
    return inner + 1 if isinstance(f, (Box, Diamond)) else inner


# ---------------------------------------------------------------------------
# parser


class ParseError(ValueError):
    """Syntax error with the byte offset and the set of tokens that would fit."""

    def __init__(self, offset: int, expected, found: str):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"syntax error at byte {offset}: expected one of {{{exp}}}, found {found}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>->|\\/|\[\]|<>|=\(|[~&|(),]))"
)

_WS_RE = re.compile(r"\s*")

_ATOM_START = {"identifier", "bot", "~", "[]", "<>", "=(", "("}


class _Parser:
    def __init__(self, text: str, metavars: bool):
        self.data = text.encode("utf-8")
        self.text = text
        self.metavars = metavars
        self.tokens: list[tuple[str, str, int]] = []
        self._lex()
        self.i = 0

    def _lex(self):
        pos = 0
        text = self.text
        while True:
            pos = _WS_RE.match(text, pos).end()
            if pos >= len(text):
                break
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                raise ParseError(self._byte(pos), _ATOM_START | {"->", "\\/", "|", "&", ")", ","},
                                 repr(text[pos]))
            start = m.start("ident") if m.group("ident") else m.start("op")
            if m.group("ident") is not None:
                word = m.group("ident")
                if word == "bot":
                    self.tokens.append(("bot", word, start))
                elif word[0].isupper() and not self.metavars:
                    raise ParseError(self._byte(start), _ATOM_START, repr(word))
                else:
                    self.tokens.append(("identifier", word, start))
            else:
                op = m.group("op")
                self.tokens.append((op, op, start))
            pos = m.end()
        self.tokens.append(("end of input", "", len(text)))

    def _byte(self, pos: int) -> int:
        return len(self.text[:pos].encode("utf-8"))

    def peek(self):
        return self.tokens[self.i]

    def fail(self, expected):
        kind, val, pos = self.peek()
        found = "end of input" if kind == "end of input" else repr(val)
        raise ParseError(self._byte(pos), expected, found)

    def take(self, kind):
        if self.peek()[0] != kind:
            self.fail({kind})
        self.i += 1

    def parse(self) -> Formula:
        f = self.implication()
        if self.peek()[0] != "end of input":
            self.fail({"->", "\\/", "|", "&", "end of input"})
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.i += 1
            return Implies(left, self.implication())
        return left

    def _left_assoc(self, op, sub, ctor):
        acc = sub()
        while self.peek()[0] == op:
            self.i += 1
            acc = ctor(acc, sub())
        return acc

    def disjunction(self):
        return self._left_assoc("\\/", self.tensor, Or)

    def tensor(self):
        return self._left_assoc("|", self.conjunction, Tensor)

    def conjunction(self):
        return self._left_assoc("&", self.unary, And)

    def unary(self) -> Formula:
        kind = self.peek()[0]
        if kind == "~":
            self.i += 1
            return Neg(self.unary())
        if kind == "[]":
            self.i += 1
            return Box(self.unary())
        if kind == "<>":
            self.i += 1
            return Diamond(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, val, _ = self.peek()
        if kind == "identifier":
            self.i += 1
            return Prop(val)
        if kind == "bot":
            self.i += 1
            return BOT
        if kind == "(":
            self.i += 1
            f = self.implication()
            if self.peek()[0] != ")":
                self.fail({")", "->", "\\/", "|", "&"})
            self.i += 1
            return f
        if kind == "=(":
            self.i += 1
            args = [self.implication()]
            while self.peek()[0] == ",":
                self.i += 1
                args.append(self.implication())
            if self.peek()[0] != ")":
                self.fail({",", ")", "->", "\\/", "|", "&"})
            self.i += 1
            return Dep(args[:-1], args[-1])
        self.fail(_ATOM_START)


def parse(text: str, *, metavars: bool = False) -> Formula:
    """Parse the ASCII concrete syntax into a formula.

    With ``metavars=True`` identifiers may start with an upper-case letter;
    the proof checker uses this to write axiom schemes.
    """
    if isinstance(text, Formula):
        return text
    return _Parser(text, metavars).parse()


# ---------------------------------------------------------------------------
# printer

_LEVEL = {Implies: 0, Or: 1, Tensor: 2, And: 3}
_UNARY_LEVEL = 4
_ATOM_LEVEL = 5
_OPS = {Implies: " -> ", Or: " \\/ ", Tensor: " | ", And: " & "}
_PREFIX = {Neg: "~", Box: "[]", Diamond: "<>"}


def _level(f: Formula) -> int:
    if isinstance(f, _Binary):
        return _LEVEL[type(f)]
    if isinstance(f, _Unary):
        return _UNARY_LEVEL
    return _ATOM_LEVEL


_text_cache: "weakref.WeakKeyDictionary[Formula, str]" = weakref.WeakKeyDictionary()


def to_text(f: Formula) -> str:
    """Print with minimal parentheses; ``parse(to_text(f)) is f``."""
    hit = _text_cache.get(f)
    if hit is not None:
        return hit
    if isinstance(f, Prop):
        s = f.name
    elif isinstance(f, Bot):
        s = "bot"
    elif isinstance(f, Dep):
        s = "=(" + ",".join(to_text(c) for c in f.children) + ")"
    elif isinstance(f, _Unary):
        inner = to_text(f.child)
        if _level(f.child) < _UNARY_LEVEL:
            inner = f"({inner})"
        s = _PREFIX[type(f)] + inner
    else:
        lvl = _LEVEL[type(f)]
        left, right = to_text(f.left), to_text(f.right)
        if isinstance(f, Implies):
            # right-associative
            if _level(f.left) <= lvl:
                left = f"({left})"
        else:
            if _level(f.left) < lvl:
                left = f"({left})"
            if _level(f.right) <= lvl:
                right = f"({right})"
        s = left + _OPS[type(f)] + right
    _text_cache[f] = s
    return s


def check_name(name: str) -> str:
    if not _IDENT.match(name) or name == "bot":
        raise ValueError(f"bad proposition name {name!r}")
    return name
