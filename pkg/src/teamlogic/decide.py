"""Exact validity and entailment via normal forms and K.

A formula is equivalent to a disjunction of classical (flat) formulas, so
``phi |= psi`` reduces to: every premise disjunct K-entails some conclusion
disjunct. When that fails, K countermodels for one premise disjunct are glued
into a disjoint union and the team of their distinguished worlds refutes the
entailment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .kcore import k_entails, k_valid
from .kripke import KripkeModel, disjoint_union
from .normalform import NormalForm, dnf
from .syntax import Formula, Fragment, FragmentError, fragment_check
from .teameval import eval_team, eval_world

__all__ = ["TeamVerdict", "normal_form", "decide_valid", "decide_entails",
           "decide_equivalent", "flat_characterize"]


@dataclass(frozen=True)
class TeamVerdict:
    """``kind`` is Valid/Falsifiable or Entailed/NotEntailed.

    ``certificate`` lists ``(i, j)`` pairs where premise disjunct ``i``
    K-entails conclusion disjunct ``j``. For a validity query it holds the
    index of a K-valid disjunct.
    """

    kind: str
    counter: Optional[tuple[KripkeModel, int]] = None
    certificate: tuple = ()
    premise_nf: Optional[NormalForm] = field(default=None, compare=False)
    conclusion_nf: Optional[NormalForm] = field(default=None, compare=False)

    @property
    def affirmative(self) -> bool:
        return self.kind in ("Valid", "Entailed")


def normal_form(f: Formula, frag: "Fragment | str") -> NormalForm:
    """The normal form used by the decision procedure (checks the fragment)."""
    frag = Fragment.parse(frag)
    bad = fragment_check(f, frag)
    if bad:
        raise FragmentError(f, frag, bad)
    return dnf(f, frag)


class _Points:
    """Pointed countermodels collected for one query, reused when possible."""

    def __init__(self):
        self.items: list[tuple[KripkeModel, int]] = []

    def find(self, pred) -> bool:
        return any(pred(m, w) for m, w in self.items)

    def add(self, pointed):
        self.items.append(pointed)

    def team_model(self) -> tuple[KripkeModel, int]:
        m, offsets = disjoint_union([m for m, _ in self.items])
        x = 0
        for (_, w), off in zip(self.items, offsets):
            x |= 1 << (off + w)
        return m, x


def decide_valid(f: Formula, frag: "Fragment | str" = Fragment.MT0) -> TeamVerdict:
    """``|= f``: valid iff some normal-form disjunct is K-valid.

    Otherwise each disjunct gets a K-countermodel; a point already collected
    that refutes the disjunct is reused instead of adding a new component.
    The team of all collected points refutes ``f`` and is re-checked.
    """
    nf = normal_form(f, frag)
    pts = _Points()
    for i, a in enumerate(nf):
        if pts.find(lambda m, w: not eval_world(m, w, a)):
            continue
        v = k_valid(a)
        if v.valid:
            return TeamVerdict("Valid", certificate=(i,), premise_nf=nf)
        pts.add(v.counter)
    m, x = pts.team_model()
    if eval_team(m, x, f):
        raise AssertionError("synthesised countermodel does not refute the formula")
    return TeamVerdict("Falsifiable", (m, x), premise_nf=nf)


def decide_entails(phi: Formula, psi: Formula,
                   frag: "Fragment | str" = Fragment.MT0) -> TeamVerdict:
    """``phi |= psi`` by the disjunct-wise K reduction.

    The certificate maps each premise disjunct ``i`` to a conclusion disjunct
    ``j`` with ``alpha_i |=_K beta_j``. On failure the smallest failing ``i``
    is refuted by one K-countermodel per ``j``.
    """
    frag = Fragment.parse(frag)
    a_nf = normal_form(phi, frag)
    b_nf = normal_form(psi, frag)
    cert = []
    for i, a in enumerate(a_nf):
        pts = _Points()
        for j, b in enumerate(b_nf):
            if pts.find(lambda m, w: not eval_world(m, w, b)):
                continue
            v = k_entails(a, b)
            if v.valid:
                cert.append((i, j))
                break
            pts.add(v.counter)
        else:
            m, x = pts.team_model()
            if not eval_team(m, x, phi) or eval_team(m, x, psi):
                raise AssertionError("synthesised countermodel failed re-verification")
            return TeamVerdict("NotEntailed", (m, x), premise_nf=a_nf, conclusion_nf=b_nf)
    return TeamVerdict("Entailed", certificate=tuple(cert), premise_nf=a_nf, conclusion_nf=b_nf)


def flat_characterize(f: Formula, frag: "Fragment | str" = Fragment.MT0) -> Optional[Formula]:
    """A classical formula equivalent to ``f`` if ``f`` is flat, else ``None``.

    Returns the first disjunct ``alpha_j`` that every disjunct K-entails.
    """
    nf = normal_form(f, frag)
    for b in nf:
        if all(a is b or k_entails(a, b).valid for a in nf):
            return b
    return None


def decide_equivalent(phi: Formula, psi: Formula, frag="mt0") -> bool:
    return (decide_entails(phi, psi, frag).affirmative
            and decide_entails(psi, phi, frag).affirmative)

