"""Regenerate the shipped derivations under ``teamlogic/data/derivations``.

Each derivation is built with :class:`teamlogic.hilbert.Builder`, checked, and
written as JSON.  Run from the repository root:

    python demos/build_derivations.py
"""
import json
import sys
from pathlib import Path

from teamlogic.hilbert import Builder, check_derivation, dump_derivation
from teamlogic.syntax import BOT, Box, Diamond, Implies, Or, parse

OUT = Path(__file__).resolve().parent.parent / "src" / "teamlogic" / "data" / "derivations"


def box_or_forward(system, phi, psi):
    b = Builder(system, [f"[]({phi} \\/ {psi})"])
    b.mp(b.premise(1), b.axiom(f"[]({phi} \\/ {psi}) -> []{phi} \\/ []{psi}", "11"))
    return b.build(f"[]{phi} \\/ []{psi}")


def box_or_backward(system, phi, psi):
    f, g = parse(phi), parse(psi)
    goal = Box(Or(f, g))
    b = Builder(system, [f"[]{phi} \\/ []{psi}"])
    arms = []
    for x, scheme in ((f, "ipc.e1"), (g, "ipc.e2")):
        inner = b.nec(b.axiom(Implies(x, Or(f, g)), scheme))
        k = b.axiom(Implies(b.formula(inner), Implies(Box(x), goal)), "ik.2")
        arms.append(b.mp(inner, k))
    case = b.axiom(Implies(Implies(Box(f), goal),
                           Implies(Implies(Box(g), goal), Implies(Or(Box(f), Box(g)), goal))), "ipc.f")
    step = b.mp(arms[1], b.mp(arms[0], case))
    b.mp(b.premise(1), step)
    return b.build(goal)


def dn_elim(system, alpha):
    b = Builder(system, [f"~~({alpha})"])
    b.mp(b.premise(1), b.axiom(f"~~({alpha}) -> {alpha}", "dn"))
    return b.build(alpha)


def dn_intro(system, alpha):
    a = parse(alpha)
    na = Implies(a, BOT)
    b = Builder(system, [alpha])
    ident = b.identity(na)
    s = b.axiom(Implies(Implies(na, na), Implies(Implies(na, a), Implies(na, BOT))), "ipc.b")
    step = b.mp(ident, s)
    b.mp(b.weaken(b.premise(1), na), step)
    return b.build(f"~~({alpha})")


def dual_to_diamond(system, alpha):
    a = parse(alpha)
    b = Builder(system, [f"~[]~({alpha})"])
    inner = b.mp(b.premise(1), b.axiom(f"~[]~({alpha}) -> <>~~({alpha})", "10"))
    box = b.nec(b.axiom(f"~~({alpha}) -> {alpha}", "dn"))
    k = b.axiom(Implies(b.formula(box), Implies(b.formula(inner), Diamond(a))), "ik.3")
    b.mp(inner, b.mp(box, k))
    return b.build(Diamond(a))


def diamond_to_dual(system, alpha):
    a = parse(alpha)
    hyp = Box(Implies(a, BOT))
    b = Builder(system, [f"<>({alpha})"])
    k = b.axiom(Implies(hyp, Implies(Diamond(a), Diamond(BOT))), "ik.3")
    s = b.axiom(Implies(b.formula(k), Implies(Implies(hyp, Diamond(a)), Implies(hyp, Diamond(BOT)))), "ipc.b")
    to_bot = b.mp(b.weaken(b.premise(1), hyp), b.mp(k, s))
    b.chain(to_bot, b.axiom("~<>bot", "ik.4"))
    return b.build(f"~[]~({alpha})")


ITEMS = {
    "b_forward": (box_or_forward, ("p", "q")),
    "b_backward": (box_or_backward, ("p", "q")),
    "b_forward_modal": (box_or_forward, ("<>p", "~q")),
    "b_backward_modal": (box_or_backward, ("<>p", "~q")),
    "d_forward": (dn_elim, ("p",)),
    "d_backward": (dn_intro, ("p",)),
    "d_forward_modal": (dn_elim, ("[]p",)),
    "d_backward_modal": (dn_intro, ("[]p",)),
    "e_forward": (diamond_to_dual, ("p",)),
    "e_backward": (dual_to_diamond, ("p",)),
    "e_forward_modal": (diamond_to_dual, ("p & q",)),
    "e_backward_modal": (dual_to_diamond, ("p & q",)),
}


def _dumps(doc):
    # one derivation line per text line keeps diffs readable
    head = {k: v for k, v in doc.items() if k != "lines"}
    body = ",\n  ".join(json.dumps(line) for line in doc["lines"])
    top = json.dumps(head)[:-1]
    return f'{top}, "lines": [\n  {body}\n]}}\n'


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    bad = 0
    for system in ("HMT0", "HMID"):
        for name, (fn, args) in ITEMS.items():
            d = fn(system, *args)
            res = check_derivation(d)
            status = "ok" if res.ok else f"FAILED at line {res.line}: {res.message}"
            print(f"{system.lower()}_{name}: {len(d.lines)} lines, {status}")
            bad += not res.ok
            (OUT / f"{system.lower()}_{name}.json").write_text(_dumps(dump_derivation(d)))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
