"""Hilbert-style derivations: axiom-scheme matching and proof checking.

Schemes are written in the formula grammar with upper-case metavariables.
Metavariables whose name starts with ``ALPHA`` or ``BETA`` only bind
classical formulas; the others bind anything. Patterns and candidate formulas
are compared after rewriting ``~a`` to ``a -> bot``, so a scheme written with
negation also matches its implication spelling and vice versa.

Systems:

* ``HInql``: the intuitionistic axioms, the classical-antecedent
  distribution axiom ``kp`` and double negation ``dn`` for classical
  formulas; modus ponens only.
* ``HMT0``: ``HInql`` plus the intuitionistic modal axioms (group 2) and
  axioms 3 to 11; modus ponens and necessitation.
* ``HMID``: ``HMT0`` without the tensor axioms 4 to 9.
* ``HK``: a classical axiomatisation of K; modus ponens, necessitation and
  uniform substitution.

Rule applications compare formulas with ``~a`` read as ``a -> bot``.
Derivations from premises: necessitation and uniform substitution only apply
to lines that depend on no premise.
"""

from __future__ import annotations

import enum
import json
from importlib import resources
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .normalform import dep_implication_form
from .syntax import (BOT, And, Bot, Box, Dep, Diamond, Formula, Fragment,
                     Implies, Neg, Prop, desugar_neg, fragment_check, is_classical, map_children,
                     parse, to_text)

__all__ = ["SystemId", "Scheme", "SCHEMES", "system_schemes", "match_axiom",
           "Line", "Derivation", "CheckResult", "check_derivation",
           "load_derivation", "dump_derivation", "DerivationFormatError",
           "substitute", "instantiate", "Builder", "shipped_derivations"]


class SystemId(enum.Enum):
    HMT0 = "HMT0"
    HMID = "HMID"
    HInql = "HInql"
    HK = "HK"

    @classmethod
    def parse(cls, text: "str | SystemId") -> "SystemId":
        if isinstance(text, SystemId):
            return text
        for s in cls:
            if s.value.lower() == str(text).strip().lower():
                return s
        raise ValueError(f"unknown proof system {text!r}")


@dataclass(frozen=True)
class Scheme:
    id: str
    text: str
    group: int
    pattern: Optional[Formula] = field(default=None, compare=False)

    @property
    def metavars(self) -> tuple[str, ...]:
        if self.pattern is None:
            return ()
        return tuple(sorted(self.pattern.props))


def _scheme(sid: str, text: Optional[str], group: int) -> Scheme:
    pat = None if text is None else desugar_neg(parse(text, metavars=True))
    return Scheme(sid, text or "", group, pat)


_INQL = [
    ("ipc.a", "PHI -> (PSI -> PHI)"),
    ("ipc.b", "(PHI -> (PSI -> CHI)) -> ((PHI -> PSI) -> (PHI -> CHI))"),
    ("ipc.c1", "PHI & PSI -> PHI"),
    ("ipc.c2", "PHI & PSI -> PSI"),
    ("ipc.d", "PHI -> (CHI -> PHI & CHI)"),
    ("ipc.e1", "PHI -> PHI \\/ PSI"),
    ("ipc.e2", "PSI -> PHI \\/ PSI"),
    ("ipc.f", "(PHI -> CHI) -> ((PSI -> CHI) -> (PHI \\/ PSI -> CHI))"),
    ("ipc.g", "bot -> PHI"),
    ("kp", "(ALPHA -> PHI \\/ PSI) -> (ALPHA -> PHI) \\/ (ALPHA -> PSI)"),
    ("dn", "~~ALPHA -> ALPHA"),
]
_IK = [
    ("ik.2", "[](PHI -> PSI) -> ([]PHI -> []PSI)"),
    ("ik.3", "[](PHI -> PSI) -> (<>PHI -> <>PSI)"),
    ("ik.4", "~<>bot"),
    ("ik.5", "<>(PHI \\/ PSI) -> <>PHI \\/ <>PSI"),
    ("ik.6", "(<>PHI -> []PSI) -> [](PHI -> PSI)"),
]
_MT0 = [
    ("3", None),  # dependence atom against its implication form, matched structurally
    ("4", "PHI -> PHI | PSI"),
    ("5", "(PHI -> ALPHA) -> ((PSI -> ALPHA) -> (PHI | PSI -> ALPHA))"),
    ("6", "(PHI -> CHI) -> ((PSI -> THETA) -> (PHI | PSI -> CHI | THETA))"),
    ("7", "PHI | PSI -> PSI | PHI"),
    ("8", "PHI | (PSI | CHI) -> (PHI | PSI) | CHI"),
    ("9", "PHI | (PSI \\/ CHI) -> PHI | PSI \\/ PHI | CHI"),
    ("10", "~[]ALPHA -> <>~ALPHA"),
    ("11", "[](PHI \\/ PSI) -> []PHI \\/ []PSI"),
]
_K = [
    ("k.1", "A -> (B -> A)"),
    ("k.2", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))"),
    ("k.3", "~~A -> A"),
    ("k.4", "bot -> A"),
    ("k.5", "A & B -> A"),
    ("k.6", "A & B -> B"),
    ("k.7", "A -> (B -> A & B)"),
    ("k.8", "A -> A | B"),
    ("k.9", "B -> A | B"),
    ("k.10", "(A -> C) -> ((B -> C) -> (A | B -> C))"),
    ("k.11", "[](A -> B) -> ([]A -> []B)"),
    ("k.12", "<>A -> ~[]~A"),
    ("k.13", "~[]~A -> <>A"),
]

SCHEMES: dict[str, Scheme] = {}
for _grp, _items in ((1, _INQL), (2, _IK), (0, _MT0), (0, _K)):
    for _sid, _text in _items:
        SCHEMES[_sid] = _scheme(_sid, _text, _grp)
del _grp, _items, _sid, _text

_TENSOR_AXIOMS = {"4", "5", "6", "7", "8", "9"}


def system_schemes(sys: "SystemId | str") -> list[Scheme]:
    """Schemes of ``sys`` in matching order."""
    sys = SystemId.parse(sys)
    if sys is SystemId.HK:
        return [SCHEMES[s] for s, _ in _K]
    out = [SCHEMES[s] for s, _ in _INQL]
    if sys is SystemId.HInql:
        return out
    out += [SCHEMES[s] for s, _ in _IK]
    for s, _ in _MT0:
        if sys is SystemId.HMID and s in _TENSOR_AXIOMS:
            continue
        out.append(SCHEMES[s])
    return out


_LANGUAGE = {
    SystemId.HMT0: Fragment.MT0,
    SystemId.HMID: Fragment.MID,
    SystemId.HInql: Fragment.MID,
    SystemId.HK: Fragment.MT0,
}


def _language_errors(f: Formula, sys: SystemId) -> list[str]:
    frag = _LANGUAGE[sys]
    errs = [str(v) for v in fragment_check(f, frag)]
    if sys is SystemId.HK and not is_classical(f, frag):
        errs.append("HK formulas must be classical")
    if sys is SystemId.HInql and any(isinstance(n, (Box, Diamond, Dep)) for n in _nodes(f)):
        errs.append("inquisitive logic has no modalities or dependence atoms")
    return errs


def _nodes(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(g.children)


# ---------------------------------------------------------------------------
# matching


def _is_metavar(node: Formula) -> bool:
    return isinstance(node, Prop) and node.name[0].isupper()


def _classical_var(name: str) -> bool:
    return name.startswith(("ALPHA", "BETA"))


def _view(f: Formula):
    # ``~a`` is looked at as ``a -> bot``
    if isinstance(f, Neg):
        return Implies, (f.child, BOT)
    return type(f), f.children


def _match(pat: Formula, f: Formula, env: dict, frag: Fragment) -> bool:
    if _is_metavar(pat):
        bound = env.get(pat.name)
        if bound is not None:
            return bound is f or desugar_neg(bound) is desugar_neg(f)
        if _classical_var(pat.name) and not is_classical(f, frag):
            return False
        env[pat.name] = f
        return True
    kind, kids = _view(f)
    if type(pat) is not kind:
        return False
    if isinstance(pat, (Prop, Bot)):
        return pat is f
    if isinstance(pat, Dep) and len(pat.children) != len(kids):
        return False
    return all(_match(p, c, env, frag) for p, c in zip(pat.children, kids))


def _match_dep_axiom(f: Formula, frag: Fragment) -> Optional[dict]:
    # (D -> T) & (T -> D) with D a dependence atom with classical arguments
    if not (isinstance(f, And) and isinstance(f.left, Implies) and isinstance(f.right, Implies)):
        return None
    d, t = f.left.left, f.left.right
    if not isinstance(d, Dep) or f.right.right is not d:
        return None
    if desugar_neg(f.right.left) is not desugar_neg(t):
        return None
    if not all(is_classical(c, frag) for c in d.children):
        return None
    if desugar_neg(dep_implication_form(d)) is not desugar_neg(t):
        return None
    env = {f"ALPHA{i + 1}": a for i, a in enumerate(d.args)}
    env["BETA"] = d.target
    return env


def _match_scheme(s: Scheme, f: Formula, frag: Fragment) -> Optional[dict]:
    if s.id == "3":
        return _match_dep_axiom(f, frag)
    env: dict = {}
    return env if _match(s.pattern, f, env, frag) else None


def match_axiom(f: Formula, sys: "SystemId | str", only: Optional[Sequence[str]] = None
                ) -> Optional[tuple[str, dict]]:
    """First scheme of ``sys`` (in the fixed order) that ``f`` instantiates.

    Returns ``(scheme id, {metavariable: formula})`` or ``None``. ``only``
    restricts the candidate schemes.
    """
    sys = SystemId.parse(sys)
    frag = _LANGUAGE[sys]
    for s in system_schemes(sys):
        if only is not None and s.id not in only:
            continue
        env = _match_scheme(s, f, frag)
        if env is not None:
            return s.id, env
    return None


def instantiate(scheme_id: str, env: Mapping[str, Formula]) -> Formula:
    """Substitute formulas for the metavariables of a scheme."""
    s = SCHEMES[scheme_id]
    if s.id == "3":
        args = [env[f"ALPHA{i + 1}"] for i in range(len(env) - 1)]
        d = Dep(tuple(args), env["BETA"])
        t = dep_implication_form(d)
        return And(Implies(d, t), Implies(t, d))
    return _subst_metavars(parse(s.text, metavars=True), env)


def _subst_metavars(f: Formula, env) -> Formula:
    if _is_metavar(f):
        return env[f.name]
    return map_children(f, lambda c: _subst_metavars(c, env))


def substitute(f: Formula, subst: Mapping[str, Formula]) -> Formula:
    """Uniform substitution of formulas for proposition letters."""
    if isinstance(f, Prop):
        return subst.get(f.name, f)
    return map_children(f, lambda c: substitute(c, subst))


# ---------------------------------------------------------------------------
# derivations


class DerivationFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Line:
    """One derivation line. ``rule`` is ``axiom``, ``premise``, ``mp``,
    ``nec`` or ``us``; ``args`` holds the rule's arguments."""

    formula: Formula
    rule: str
    args: tuple = ()


@dataclass(frozen=True)
class Derivation:
    system: SystemId
    premises: tuple[Formula, ...]
    lines: tuple[Line, ...]
    conclusion: Optional[Formula] = None


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    line: Optional[int] = None          # 1-based line of the first error
    message: str = ""
    deps: frozenset = frozenset()       # premises the conclusion rests on
    justifications: tuple = ()

    def to_json(self) -> dict:
        out: dict = {"ok": self.ok}
        if not self.ok:
            out["line"] = self.line
            out["error"] = self.message
        else:
            out["premises_used"] = sorted(self.deps)
            out["justifications"] = list(self.justifications)
        return out


def _fail(i, msg):
    return CheckResult(False, i, msg)


def check_derivation(d: Derivation, sys: "SystemId | str | None" = None,
                     claim: Optional[tuple[Sequence[Formula], Formula]] = None) -> CheckResult:
    """Check every line of ``d`` in ``sys`` and the claim ``premises |- conclusion``.

    ``claim`` defaults to the derivation's own premises and conclusion (the
    last line when no conclusion is given).
    """
    sys = SystemId.parse(sys) if sys is not None else d.system
    if claim is None:
        premises, conclusion = d.premises, d.conclusion
    else:
        premises, conclusion = tuple(claim[0]), claim[1]
    if not d.lines:
        return _fail(None, "derivation has no lines")
    deps: list[frozenset] = []
    notes = []
    for i, line in enumerate(d.lines, 1):
        f = line.formula
        errs = _language_errors(f, sys)
        if errs:
            return _fail(i, f"formula outside the language of {sys.value}: {errs[0]}")
        rule = line.rule
        if rule == "axiom":
            want = line.args[0] if line.args else None
            only = _axiom_filter(want, sys)
            if only is not None and not only:
                return _fail(i, f"{want!r} is not an axiom of {sys.value}")
            hit = match_axiom(f, sys, only)
            if hit is None:
                what = "any axiom scheme" if want is None else f"axiom {want}"
                return _fail(i, f"{to_text(f)} is not an instance of {what} of {sys.value}")
            if len(line.args) > 1 and line.args[1]:
                for k, v in line.args[1].items():
                    if k not in hit[1] or _canon(hit[1][k]) is not _canon(v):
                        return _fail(i, f"instantiation of {k} does not match")
            deps.append(frozenset())
            notes.append(f"axiom {hit[0]}")
        elif rule == "premise":
            k = line.args[0]
            if not isinstance(k, int) or not 1 <= k <= len(d.premises):
                return _fail(i, f"no premise number {k}")
            if _canon(d.premises[k - 1]) is not _canon(f):
                return _fail(i, f"line does not restate premise {k}")
            deps.append(frozenset({k}))
            notes.append(f"premise {k}")
        elif rule == "mp":
            a, b = line.args
            for j in (a, b):
                if not isinstance(j, int) or not 1 <= j < i:
                    return _fail(i, f"modus ponens cites line {j}, which does not precede line {i}")
            ca, cb, cf = (_canon(d.lines[a - 1].formula), _canon(d.lines[b - 1].formula),
                          _canon(f))
            if not (_is_mp(ca, cb, cf) or _is_mp(cb, ca, cf)):
                return _fail(i, f"lines {a} and {b} do not have the shape phi, phi -> {to_text(f)}")
            deps.append(deps[a - 1] | deps[b - 1])
            notes.append(f"mp {a},{b}")
        elif rule == "nec":
            (j,) = line.args
            if not isinstance(j, int) or not 1 <= j < i:
                return _fail(i, f"necessitation cites line {j}, which does not precede line {i}")
            if sys is SystemId.HInql:
                return _fail(i, "necessitation is not a rule of HInql")
            if deps[j - 1]:
                return _fail(i, f"necessitation applied to line {j}, which depends on premises {sorted(deps[j - 1])}")
            if _canon(f) is not _canon(Box(d.lines[j - 1].formula)):
                return _fail(i, f"line is not the box of line {j}")
            deps.append(frozenset())
            notes.append(f"nec {j}")
        elif rule == "us":
            j, subst = line.args
            if sys is not SystemId.HK:
                return _fail(i, f"uniform substitution is not a rule of {sys.value}")
            if not isinstance(j, int) or not 1 <= j < i:
                return _fail(i, f"substitution cites line {j}, which does not precede line {i}")
            if deps[j - 1]:
                return _fail(i, f"substitution applied to line {j}, which depends on premises")
            if _canon(substitute(d.lines[j - 1].formula, subst)) is not _canon(f):
                return _fail(i, f"line is not the stated substitution instance of line {j}")
            deps.append(frozenset())
            notes.append(f"us {j}")
        else:
            return _fail(i, f"unknown rule {rule!r}")
    last = d.lines[-1].formula
    if conclusion is not None and _canon(last) is not _canon(conclusion):
        return _fail(len(d.lines), f"last line {to_text(last)} is not the claimed conclusion {to_text(conclusion)}")
    used = deps[-1]
    # premise numbers refer to the derivation's list; the claim must include them
    claimed = {_canon(g) for g in premises}
    for k in used:
        if _canon(d.premises[k - 1]) not in claimed:
            return _fail(len(d.lines), f"conclusion depends on premise {k}, which is not claimed")
    return CheckResult(True, deps=used, justifications=tuple(notes))


def _canon(f: Formula) -> Formula:
    return desugar_neg(f)


def _is_mp(minor: Formula, major: Formula, result: Formula) -> bool:
    return isinstance(major, Implies) and major.left is minor and major.right is result


def _axiom_filter(want, sys: SystemId) -> Optional[list[str]]:
    if want is None:
        return None
    ids = [s.id for s in system_schemes(sys)]
    if isinstance(want, int) and not isinstance(want, bool):
        if want in (1, 2) and sys in (SystemId.HMT0, SystemId.HMID):
            return [s.id for s in system_schemes(sys) if s.group == want]
        want = str(want)
    return [want] if want in ids else []


# ---------------------------------------------------------------------------
# JSON


def _formula(text, where: str) -> Formula:
    if not isinstance(text, str):
        raise DerivationFormatError(f"{where}: formula must be a string")
    try:
        return parse(text)
    except ValueError as exc:
        raise DerivationFormatError(f"{where}: {exc}") from None


def load_derivation(data) -> Derivation:
    """Read the JSON derivation format (1-based line numbers).

    ``{"system": "HMT0", "premises": [...], "conclusion": "...",
    "lines": [{"f": "...", "by": RULE}, ...]}`` where RULE is one of
    ``{"axiom": 11}``, ``{"axiom": "ipc.a", "with": {"PHI": "p"}}``,
    ``{"premise": 1}``, ``{"mp": [i, j]}``, ``{"nec": i}`` or
    ``{"us": i, "subst": {"p": "q"}}``. ``conclusion`` is optional.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise DerivationFormatError(f"derivation is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise DerivationFormatError("derivation must be a JSON object")
    unknown = set(data) - {"system", "premises", "lines", "conclusion"}
    if unknown:
        raise DerivationFormatError(f"unknown keys: {sorted(unknown)}")
    try:
        sys = SystemId.parse(data.get("system", "HMT0"))
    except ValueError as exc:
        raise DerivationFormatError(str(exc)) from None
    premises = tuple(_formula(p, f"premise {k}") for k, p in enumerate(data.get("premises", []), 1))
    raw_lines = data.get("lines")
    if not isinstance(raw_lines, list):
        raise DerivationFormatError("'lines' must be a list")
    lines = []
    for i, raw in enumerate(raw_lines, 1):
        if not isinstance(raw, dict) or set(raw) - {"f", "by"} or "f" not in raw or "by" not in raw:
            raise DerivationFormatError(f"line {i}: expected an object with 'f' and 'by'")
        f = _formula(raw["f"], f"line {i}")
        by = raw["by"]
        if not isinstance(by, dict):
            raise DerivationFormatError(f"line {i}: 'by' must be an object")
        lines.append(_rule(by, f, i))
    concl = data.get("conclusion")
    conclusion = _formula(concl, "conclusion") if concl is not None else None
    return Derivation(sys, premises, tuple(lines), conclusion)


def _rule(by: dict, f: Formula, i: int) -> Line:
    keys = set(by)
    if "axiom" in keys and keys <= {"axiom", "with"}:
        env = {}
        for k, v in (by.get("with") or {}).items():
            env[k] = _formula(v, f"line {i} instantiation")
        return Line(f, "axiom", (by["axiom"], env))
    if keys == {"premise"}:
        return Line(f, "premise", (by["premise"],))
    if keys == {"mp"}:
        pair = by["mp"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise DerivationFormatError(f"line {i}: 'mp' takes two line numbers")
        return Line(f, "mp", tuple(pair))
    if keys == {"nec"}:
        return Line(f, "nec", (by["nec"],))
    if keys == {"us", "subst"}:
        subst = by["subst"]
        if not isinstance(subst, dict):
            raise DerivationFormatError(f"line {i}: 'subst' must be an object")
        return Line(f, "us", (by["us"], {k: _formula(v, f"line {i} substitution")
                                         for k, v in subst.items()}))
    raise DerivationFormatError(f"line {i}: unknown justification {sorted(keys)}")


def dump_derivation(d: Derivation) -> dict:
    """Inverse of :func:`load_derivation`."""
    lines = []
    for line in d.lines:
        if line.rule == "axiom":
            by: dict = {"axiom": line.args[0]}
            if len(line.args) > 1 and line.args[1]:
                by["with"] = {k: to_text(v) for k, v in sorted(line.args[1].items())}
        elif line.rule == "premise":
            by = {"premise": line.args[0]}
        elif line.rule == "mp":
            by = {"mp": list(line.args)}
        elif line.rule == "nec":
            by = {"nec": line.args[0]}
        else:
            by = {"us": line.args[0], "subst": {k: to_text(v) for k, v in sorted(line.args[1].items())}}
        lines.append({"f": to_text(line.formula), "by": by})
    out = {"system": d.system.value, "premises": [to_text(p) for p in d.premises], "lines": lines}
    if d.conclusion is not None:
        out["conclusion"] = to_text(d.conclusion)
    return out


_K_NAMES = {"ipc.a": "k.1", "ipc.b": "k.2"}


class Builder:
    """Write derivations line by line; every method returns the new line number.

    Axiom lines are matched on entry, so a typo fails early. ``identity`` and
    ``chain`` expand to fixed patterns of ``ipc.a``/``ipc.b`` and modus ponens.
    """

    def __init__(self, system: "SystemId | str", premises: Sequence[str] = ()):
        self.system = SystemId.parse(system)
        self.premises = tuple(parse(p) for p in premises)
        self.lines: list[Line] = []

    def _add(self, f, rule, args) -> int:
        self.lines.append(Line(parse(f) if isinstance(f, str) else f, rule, args))
        return len(self.lines)

    def formula(self, i: int) -> Formula:
        return self.lines[i - 1].formula

    def premise(self, k: int) -> int:
        return self._add(self.premises[k - 1], "premise", (k,))

    def axiom(self, f, scheme=None) -> int:
        f = parse(f) if isinstance(f, str) else f
        if self.system is SystemId.HK:
            scheme = _K_NAMES.get(scheme, scheme)
        hit = match_axiom(f, self.system, None if scheme is None else [str(scheme)])
        if hit is None:
            raise ValueError(f"{to_text(f)} is not an axiom instance of {self.system.value}")
        return self._add(f, "axiom", (scheme if scheme is not None else hit[0], {}))

    def mp(self, minor: int, major: int) -> int:
        imp = desugar_neg(self.formula(major))
        if not isinstance(imp, Implies) or imp.left is not desugar_neg(self.formula(minor)):
            raise ValueError(f"line {major} is not an implication from line {minor}")
        return self._add(self._resugar(self.formula(major), imp.right), "mp", (minor, major))

    def nec(self, i: int) -> int:
        return self._add(Box(self.formula(i)), "nec", (i,))

    @staticmethod
    def _resugar(major: Formula, right: Formula) -> Formula:
        # keep the consequent as written when the major premise is a literal implication
        if isinstance(major, Implies):
            return major.right
        return right

    def identity(self, a: Formula) -> int:
        """``a -> a``."""
        aa = Implies(a, a)
        l1 = self.axiom(Implies(Implies(a, Implies(aa, a)), Implies(Implies(a, aa), aa)), "ipc.b")
        l2 = self.axiom(Implies(a, Implies(aa, a)), "ipc.a")
        l3 = self.mp(l2, l1)
        l4 = self.axiom(Implies(a, aa), "ipc.a")
        return self.mp(l4, l3)

    def weaken(self, i: int, a: Formula) -> int:
        """From ``b`` infer ``a -> b``."""
        b = self.formula(i)
        return self.mp(i, self.axiom(Implies(b, Implies(a, b)), "ipc.a"))

    def chain(self, i: int, j: int) -> int:
        """From ``a -> b`` (line i) and ``b -> c`` (line j) infer ``a -> c``."""
        ab, bc = desugar_neg(self.formula(i)), desugar_neg(self.formula(j))
        a, c = ab.left, bc.right
        k = self.weaken(j, a)                       # a -> (b -> c)
        s = self.axiom(Implies(Implies(a, bc), Implies(ab, Implies(a, c))), "ipc.b")
        return self.mp(i, self.mp(k, s))

    def build(self, conclusion=None) -> Derivation:
        concl = parse(conclusion) if isinstance(conclusion, str) else conclusion
        return Derivation(self.system, self.premises, tuple(self.lines), concl)


def shipped_derivations() -> dict[str, Derivation]:
    """The derivations bundled with the package, keyed by file stem."""
    root = resources.files("teamlogic") / "data" / "derivations"
    out = {}
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out[entry.name[:-5]] = load_derivation(json.loads(entry.read_text()))
    return out
