"""Exhaustive proof search over the focused calculus.

Root-first search terminates because every premise strictly decreases
the measure (total formula size, phase, stoup emptiness): impR and
impL drop the size, p2i and f2p drop the phase, pass fills the stoup.
The fixed rule order (impR before p2i, ax before impL, impL splits
left-short-first) makes the enumeration order deterministic.

decide_eq solves the word problem for categorical derivations by
comparing focused normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from . import bridge, focused as fc
from .cat_calc import CatDeriv
from .syntax import Atom, Imp, Sequent


class ResourceCapError(RuntimeError):
    """Enumeration exceeded the configured result cap."""


def iter_focused(s: Sequent) -> Iterator[fc.FocDeriv]:
    """All phase-I focused derivations of s, in deterministic order."""
    c = s.succedent
    if isinstance(c, Imp):
        sub = Sequent(s.stoup, s.context + (c.antecedent,), c.consequent)
        for b in iter_focused(sub):
            yield fc.f_imp_r(b)
        return
    for b in _iter_p(s):
        yield fc.f_p2i(b)


def _iter_p(s: Sequent) -> Iterator[fc.FocDeriv]:
    if s.stoup is None:
        if s.context:
            sub = Sequent(s.context[0], s.context[1:], s.succedent)
            for b in _iter_p(sub):
                yield fc.f_pass(b)
        return
    for b in _iter_f(s):
        yield fc.f_f2p(b)


def _iter_f(s: Sequent) -> Iterator[fc.FocDeriv]:
    stoup = s.stoup
    if isinstance(stoup, Atom):
        if stoup == s.succedent and not s.context:
            yield fc.f_ax(stoup)
        return
    a, b = stoup.antecedent, stoup.consequent
    for k in range(len(s.context) + 1):
        args = list(iter_focused(Sequent(None, s.context[:k], a)))
        if not args:
            continue
        for cont in _iter_f(Sequent(b, s.context[k:], s.succedent)):
            for arg in args:
                yield fc.f_imp_l(arg, cont)
    return


def enumerate_focused(s: Sequent, cap: Optional[int] = 10 ** 6) -> List[fc.FocDeriv]:
    """Complete, duplicate-free list of focused derivations of s."""
    out = []
    for d in iter_focused(s):
        out.append(d)
        if cap is not None and len(out) > cap:
            raise ResourceCapError(f"more than {cap} derivations of {s}")
    return out


def count(s: Sequent, cap: Optional[int] = None) -> int:
    """Number of focused derivations of s, streaming."""
    n = 0
    for _ in iter_focused(s):
        n += 1
        if cap is not None and n > cap:
            raise ResourceCapError(f"more than {cap} derivations of {s}")
    return n


@dataclass(frozen=True)
class EqResult:
    equal: bool
    lhs_normal: fc.FocDeriv
    rhs_normal: fc.FocDeriv


def decide_eq(d1: CatDeriv, d2: CatDeriv) -> EqResult:
    """Decide equality of two categorical maps of the same type."""
    if d1.source != d2.source or d1.target != d2.target:
        raise ValueError(f"maps have different types: {d1.sequent} vs {d2.sequent}")
    n1 = fc.focus(bridge.cmplt(d1, ()))
    n2 = fc.focus(bridge.cmplt(d2, ()))
    return EqResult(n1 == n2, n1, n2)
