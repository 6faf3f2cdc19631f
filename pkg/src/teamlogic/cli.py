"""Command-line front end.

Exit codes: 0 for success or an affirmative verdict, 1 for a negative
verdict, 2 for usage and input errors. ``--json`` switches every subcommand
to a single JSON document on stdout.

Model arguments accept a file path, ``-`` for stdin, or inline JSON. A
counterexample document ``{"model": ..., "team": [...]}`` printed by
``decide`` or ``oracle`` is accepted wherever a model is, and supplies the
team when ``--team`` is omitted.
"""

from __future__ import annotations

import argparse
import io
import json
import shlex
import sys
from contextlib import redirect_stderr, redirect_stdout
from typing import Optional, Sequence

from . import decide as _decide
from . import hilbert, powerset
from .fotrans import standard_translate
from .kripke import KripkeModel, format_team, members, parse_team
from .normalform import dnf, realize_all
from .syntax import Fragment, FragmentError, fragment_check, parse, to_text
from .teameval import eval_team, oracle_entails, oracle_flat, oracle_valid

__all__ = ["run", "main"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        # only --help reaches this; its text is already on the captured stdout
        raise _Exit(status, message)


class _Exit(Exception):
    def __init__(self, status, message):
        self.status, self.message = status, message


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.buf = io.StringIO()

    def line(self, text: str = "") -> None:
        self.buf.write(text + "\n")

    def doc(self, obj) -> None:
        self.buf.write(json.dumps(obj, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# argument helpers


def _read_text(arg: str, stdin: bytes) -> str:
    if arg == "-":
        return stdin.decode("utf-8")
    if arg.lstrip().startswith(("{", "[")):
        return arg
    try:
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {arg}: {exc.strerror}") from None


def _load_json(arg: str, stdin: bytes):
    try:
        return json.loads(_read_text(arg, stdin))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{arg}: not valid JSON: {exc}") from None


def _model(args, stdin) -> tuple[KripkeModel, Optional[int]]:
    data = _load_json(args.model, stdin)
    team = None
    if isinstance(data, dict) and "model" in data:
        raw_team = data.get("team")
        data = data["model"]
        if raw_team is not None:
            team = raw_team
    try:
        m = KripkeModel.from_json(data)
    except ValueError as exc:
        raise UsageError(f"bad model: {exc}") from None
    x = None
    if getattr(args, "team", None) is not None:
        x = parse_team(args.team, m.n)
    elif team is not None:
        if isinstance(team, str):
            x = parse_team(team, m.n)
        elif isinstance(team, list) and all(isinstance(w, int) and 0 <= w < m.n for w in team):
            x = sum(1 << w for w in set(team))
        else:
            raise UsageError("bad team in model document")
    return m, x


def _formula(text: str, frag: Optional[str] = None):
    f = parse(text)
    if frag is not None:
        bad = fragment_check(f, Fragment.parse(frag))
        if bad:
            raise FragmentError(f, Fragment.parse(frag), bad)
    return f


def _counter_doc(pointed) -> dict:
    m, x = pointed
    return {"model": m.to_json(), "team": members(x)}


def _intmodel(args, stdin) -> powerset.IntModel:
    if getattr(args, "intmodel", None):
        try:
            return powerset.IntModel.from_json(_load_json(args.intmodel, stdin))
        except powerset.IntModelError as exc:
            raise UsageError(f"bad intuitionistic model: {exc}") from None
    if not getattr(args, "model", None):
        raise UsageError("give --model (a Kripke model) or --intmodel")
    m, _ = _model(args, stdin)
    return powerset.build_full_powerset(m) if args.full else powerset.build_powerset(m)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_parse(args, stdin, out):
    f = parse(args.formula)
    frag = Fragment.parse(args.fragment) if args.fragment else None
    bad = fragment_check(f, frag) if frag else []
    if out.as_json:
        doc = {"formula": to_text(f), "depth": f.depth}
        if frag:
            doc["fragment"] = frag.value
            doc["violations"] = [str(v) for v in bad]
        out.doc(doc)
    else:
        out.line(to_text(f))
        for v in bad:
            out.line(f"violation: {v}")
    return 1 if bad else 0


def _cmd_eval(args, stdin, out):
    f = _formula(args.formula, args.fragment)
    m, x = _model(args, stdin)
    if x is None:
        raise UsageError("no team given (use --team)")
    ok = eval_team(m, x, f, naive=args.naive)
    if out.as_json:
        out.doc({"satisfied": ok, "team": members(x), "formula": to_text(f)})
    else:
        out.line("satisfied" if ok else "not satisfied")
    return 0 if ok else 1


def _cmd_oracle(args, stdin, out):
    if args.query == "entails":
        if args.premise is None or args.conclusion is None:
            raise UsageError("oracle entails needs --premise and --conclusion")
        v = oracle_entails(parse(args.premise), parse(args.conclusion), args.max_worlds)
    else:
        if args.formula is None:
            raise UsageError(f"oracle {args.query} needs --formula")
        fn = oracle_valid if args.query == "valid" else oracle_flat
        v = fn(parse(args.formula), args.max_worlds)
    if out.as_json:
        doc = {"verdict": v.kind, "max_worlds": args.max_worlds}
        if v.witness:
            doc["witness"] = _counter_doc(v.witness)
        out.doc(doc)
    else:
        out.line(f"{v.kind} (models up to {args.max_worlds} worlds)")
        if v.witness:
            out.line("witness: " + json.dumps(_counter_doc(v.witness), sort_keys=True))
    return 0 if v.holds else 1


def _cmd_dnf(args, stdin, out):
    f = _formula(args.formula, args.fragment)
    nf = dnf(f, args.fragment)
    parts = [to_text(a) for a in nf]
    if out.as_json:
        out.doc({"count": len(parts), "disjuncts": parts})
    else:
        for p in parts:
            out.line(p)
    return 0


def _cmd_realize(args, stdin, out):
    f = _formula(args.formula, args.fragment)
    try:
        items = realize_all(f)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for seq, g in items:
        rows.append({"realization": to_text(g),
                     "functions": [{"path": list(p), "table": list(fn.table)}
                                   for p, fn in sorted(seq.items())]})
    if out.as_json:
        out.doc({"count": len(rows), "realizations": rows})
    else:
        for r in rows:
            out.line(r["realization"])
    return 0


def _cmd_decide(args, stdin, out):
    if args.query == "valid":
        if args.formula is None:
            raise UsageError("decide valid needs --formula")
        v = _decide.decide_valid(_formula(args.formula, args.fragment), args.fragment)
    else:
        if args.premise is None or args.conclusion is None:
            raise UsageError("decide entails needs --premise and --conclusion")
        v = _decide.decide_entails(_formula(args.premise, args.fragment),
                                   _formula(args.conclusion, args.fragment), args.fragment)
    if out.as_json:
        doc = {"verdict": v.kind, "certificate": [list(c) if isinstance(c, tuple) else c
                                                  for c in v.certificate]}
        if v.counter:
            doc.update(_counter_doc(v.counter))
        out.doc(doc)
    else:
        out.line(v.kind)
        if v.counter:
            out.line(json.dumps(_counter_doc(v.counter), sort_keys=True))
    return 0 if v.affirmative else 1


def _cmd_flat(args, stdin, out):
    f = _formula(args.formula, args.fragment)
    a = _decide.flat_characterize(f, args.fragment)
    if out.as_json:
        out.doc({"flat": a is not None, "classical": None if a is None else to_text(a)})
    else:
        out.line("not flat" if a is None else f"flat, equivalent to {to_text(a)}")
    return 0 if a is not None else 1


def _point(args, im, m_team) -> int:
    if args.point is not None:
        if not 0 <= args.point < im.n:
            raise UsageError(f"point {args.point} out of range")
        return args.point
    if m_team is None:
        raise UsageError("give --point, or --model with --team")
    if im.labels is None:
        raise UsageError("--team needs a model built from --model")
    if m_team not in im.labels:
        raise UsageError("the empty team is not a point of the powerset model (use --full)")
    return im.labels.index(m_team)


def _cmd_powerset(args, stdin, out):
    action = args.action
    if action == "build":
        im = _intmodel(args, stdin)
        doc = im.to_json()
        if im.labels is not None:
            doc_out = {"model": doc, "teams": [members(t) for t in im.labels]}
        else:
            doc_out = {"model": doc}
        if out.as_json:
            out.doc(doc_out)
        else:
            out.line(im.dumps())
            if im.labels is not None:
                out.line("points: " + " ".join(f"{i}={{{format_team(t)}}}"
                                              for i, t in enumerate(im.labels)))
        return 0
    if action == "sat":
        if args.formula is None:
            raise UsageError("powerset sat needs --formula")
        im = _intmodel(args, stdin)
        team = None
        if getattr(args, "model", None) and not args.intmodel:
            team = _model(args, stdin)[1]
        w = _point(args, im, team)
        f = parse(args.formula)
        bullet = im.ter is not None
        try:
            ok = (powerset.sat_int_bullet if bullet else powerset.sat_int)(im, w, f)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if out.as_json:
            out.doc({"satisfied": ok, "point": w, "bullet": bullet})
        else:
            out.line("satisfied" if ok else "not satisfied")
        return 0 if ok else 1
    if action == "conditions":
        im = _intmodel(args, stdin)
        which = args.only.split(",") if args.only else None
        try:
            report = powerset.check_conditions(im, which)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _report(out, report)
        return 0 if report.ok else 1
    if action == "pmorphism":
        if not (args.src and args.dst and args.map is not None):
            raise UsageError("powerset pmorphism needs --src, --dst and --map")
        try:
            src = powerset.IntModel.from_json(_load_json(args.src, stdin))
            dst = powerset.IntModel.from_json(_load_json(args.dst, stdin))
            fmap = [int(t) for t in args.map.split(",")] if args.map.strip() else []
            report = powerset.check_pmorphism(src, dst, fmap, args.flavor)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _report(out, report)
        return 0 if report.ok else 1
    if action == "endpointmap":
        im = _intmodel(args, stdin)
        flavor = args.flavor or ("tri" if im.ter is not None else "bi")
        try:
            n_model, fmap = powerset.endpoint_map(im, flavor)
        except powerset.PreconditionError as exc:
            if out.as_json:
                out.doc({"error": "preconditions failed", "conditions": exc.report.to_json()})
            else:
                out.line(str(exc))
            return 1
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if out.as_json:
            out.doc({"model": n_model.to_json(), "map": list(fmap), "flavor": flavor})
        else:
            out.line(n_model.dumps())
            out.line("map: " + ",".join(map(str, fmap)))
        return 0
    raise UsageError(f"unknown powerset action {action}")


def _report(out, report):
    if out.as_json:
        out.doc({"ok": report.ok, "conditions": report.to_json()})
        return
    for r in report.results:
        tail = "" if r.holds else f"  witness {list(r.witness)}"
        out.line(f"{r.name}: {'holds' if r.holds else 'fails'}{tail}")


def _cmd_translate(args, stdin, out):
    g = standard_translate(parse(args.formula), args.var)
    text = g.render("ascii" if args.ascii else "unicode")
    if out.as_json:
        out.doc({"translation": text, "free": sorted(g.free_vars()),
                 "quantifier_depth": g.quantifier_depth()})
    else:
        out.line(text)
    return 0


def _cmd_proof(args, stdin, out):
    try:
        d = hilbert.load_derivation(_read_text(args.file, stdin))
    except hilbert.DerivationFormatError as exc:
        raise UsageError(f"bad derivation: {exc}") from None
    res = hilbert.check_derivation(d, args.system)
    if out.as_json:
        out.doc(res.to_json())
    elif res.ok:
        out.line("accepted")
    else:
        where = f"line {res.line}: " if res.line else ""
        out.line(f"rejected: {where}{res.message}")
    return 0 if res.ok else 1


def _cmd_batch(args, stdin, out):
    worst = 0
    for raw in stdin.decode("utf-8").splitlines():
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        try:
            argv = shlex.split(raw)
        except ValueError as exc:
            code, so, se = 2, "", f"bad query line: {exc}\n"
        else:
            if argv and argv[0] == "batch":
                code, so, se = 2, "", "batch queries cannot nest\n"
            else:
                code, so, se = run(argv, b"")
        worst = max(worst, 2 if code == 2 else 0)
        out.doc({"query": raw, "code": code, "stdout": so, "stderr": se})
    return worst


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    p = _Parser(prog="teamlogic", description="Team-semantics toolkit for modal dependence logics.")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="print one JSON document")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("parse", _cmd_parse, "parse and pretty-print a formula")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--fragment")

    sp = add("eval", _cmd_eval, "evaluate a formula on a team")
    sp.add_argument("--model", required=True)
    sp.add_argument("--team")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--fragment")
    sp.add_argument("--naive", action="store_true", help="all covers and all successor teams")

    sp = add("oracle", _cmd_oracle, "bounded model search")
    sp.add_argument("query", choices=["valid", "entails", "flat"])
    sp.add_argument("--formula")
    sp.add_argument("--premise")
    sp.add_argument("--conclusion")
    sp.add_argument("--max-worlds", type=int, default=3)

    sp = add("dnf", _cmd_dnf, "disjunctive normal form")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--fragment", default="mt0")

    sp = add("realize", _cmd_realize, "all realizations of dependence atoms")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--fragment", default="mdplus")

    sp = add("decide", _cmd_decide, "exact validity or entailment")
    sp.add_argument("query", choices=["valid", "entails"])
    sp.add_argument("--formula")
    sp.add_argument("--premise")
    sp.add_argument("--conclusion")
    sp.add_argument("--fragment", default="mt0")

    sp = add("flat", _cmd_flat, "decide flatness and give the classical equivalent")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--fragment", default="mt0")

    sp = add("powerset", _cmd_powerset, "powerset models and intuitionistic semantics")
    sp.add_argument("action", choices=["build", "sat", "conditions", "pmorphism", "endpointmap"])
    sp.add_argument("--model", help="classical source model")
    sp.add_argument("--full", action="store_true", help="full powerset model (with the empty team)")
    sp.add_argument("--intmodel", help="intuitionistic model file")
    sp.add_argument("--team")
    sp.add_argument("--point", type=int)
    sp.add_argument("--formula")
    sp.add_argument("--only", help="comma-separated condition names")
    sp.add_argument("--src")
    sp.add_argument("--dst")
    sp.add_argument("--map", help="comma-separated images of the source points")
    sp.add_argument("--flavor", choices=["bi", "tri"])

    sp = add("translate", _cmd_translate, "standard translation to first-order syntax")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--var", default="x")
    sp.add_argument("--ascii", action="store_true")

    sp = add("proof", _cmd_proof, "check a Hilbert-style derivation")
    sp.add_argument("action", choices=["check"])
    sp.add_argument("--file", required=True, help="derivation JSON (path, - or inline)")
    sp.add_argument("--system", help="override the derivation's system")

    sp = add("batch", _cmd_batch, "run newline-delimited queries from stdin")
    return p


def run(argv: Sequence[str], stdin: bytes = b"") -> tuple[int, str, str]:
    """Run one invocation; returns ``(exit code, stdout, stderr)``."""
    parser = _build_parser()
    err = io.StringIO()
    help_out = io.StringIO()
    try:
        with redirect_stderr(err), redirect_stdout(help_out):
            args = parser.parse_args(list(argv))
    except UsageError as exc:
        return 2, "", f"{exc}\n"
    except _Exit as exc:
        return exc.status, help_out.getvalue(), err.getvalue()
    if args.cmd is None:
        return 2, "", parser.format_usage()
    out = _Out(getattr(args, "json", False))
    try:
        code = args.fn(args, stdin, out)
    except UsageError as exc:
        return 2, out.buf.getvalue(), f"error: {exc}\n"
    except FragmentError as exc:
        return 2, out.buf.getvalue(), f"error: {exc}\n"
    except (ValueError, KeyError) as exc:
        # ParseError, model format errors and other malformed input
        return 2, out.buf.getvalue(), f"error: {exc}\n"
    return code, out.buf.getvalue(), ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    # stdin is only read when an argument names it or for batch mode
    wants = "-" in argv or (bool(argv) and argv[0] == "batch")
    stdin = sys.stdin.buffer.read() if wants and sys.stdin is not None else b""
    code, so, se = run(argv, stdin)
    sys.stdout.write(so)
    sys.stderr.write(se)
    return code


if __name__ == "__main__":
    sys.exit(main())
