"""Translations between the calculi.

sound and cmplt relate the sequent calculus to the categorical
calculus through the iterated hom <Gamma>C. The six translations
nf2I/I2nf, p2P/P2p, ne2F/F2ne relate normal natural deduction
derivations to focused derivations; the neutral/focusing pair works
accumulator-style because application spines and focusing spines
collect their arguments in opposite orders.
"""

from __future__ import annotations

from typing import Sequence

from . import cat_calc as ct
from . import focused as fc
from . import normal_nd as nf
from . import seq_calc as sq
from .syntax import Atom, Context, Formula, Imp, Sequent


def iterated_hom(ctx: Sequence[Formula], c: Formula) -> Formula:
    """<Gamma>C, with <>C = C and <A,Gamma>C = A -o <Gamma>C."""
    out = c
    for a in reversed(ctx):
        out = Imp(a, out)
    return out


def split_iterated_hom(f: Formula, ctx: Sequence[Formula]) -> Formula:
    """Peel ctx off an iterated hom, recovering C from <Gamma>C."""
    for a in ctx:
        if not isinstance(f, Imp) or f.antecedent != a:
            raise ValueError(f"{f} does not decompose against context {list(map(str, ctx))}")
        f = f.consequent
    return f


def l_star(ctx: Sequence[Formula], p: Formula, q: Formula) -> ct.CatDeriv:
    """Iterated L: P -o Q => <Gamma>P -o <Gamma>Q."""
    if not ctx:
        return ct.c_id(Imp(p, q))
    head, rest = ctx[0], ctx[1:]
    step = ct.c_l(head, iterated_hom(rest, p), iterated_hom(rest, q))
    if not rest:
        return step
    return ct.c_comp(l_star(rest, p, q), step)


def sound(f: sq.SeqDeriv) -> ct.CatDeriv:
    """Sequent calculus to categorical calculus, at S => <Gamma>C."""
    if isinstance(f, sq.SAx):
        return ct.c_id(f.succedent)
    if isinstance(f, sq.SImpR):
        return sound(f.body)
    if isinstance(f, sq.SPass):
        a = f.context[0]
        return ct.c_comp(ct.c_j(a), ct.c_imp(ct.c_id(a), sound(f.body)))
    if isinstance(f, sq.SImpL):
        a, b = f.stoup.antecedent, f.stoup.consequent
        gamma, delta = f.arg.context, f.cont.context
        hom_delta = iterated_hom(delta, f.succedent)
        hom_all = iterated_hom(gamma + delta, f.succedent)
        body = ct.c_imp(ct.c_id(a), sound(f.cont))
        star = l_star(gamma, a, hom_delta)
        return ct.c_comp(ct.c_comp(body, star), ct.c_i(sound(f.arg), hom_all))
    raise TypeError(f)


def _cmplt_closed(d: ct.CatDeriv) -> sq.SeqDeriv:
    """Categorical derivation to a context-free sequent derivation S| |- D."""
    if isinstance(d, ct.CId):
        return sq.s_ax(d.target)
    if isinstance(d, ct.CComp):
        return sq.scut(_cmplt_closed(d.first), _cmplt_closed(d.second))
    if isinstance(d, ct.CImp):
        return sq.s_imp_r(sq.s_imp_l(sq.s_pass(_cmplt_closed(d.contra)),
                                     _cmplt_closed(d.co)))
    if isinstance(d, ct.CJ):
        return sq.s_imp_r(sq.s_pass(sq.s_ax(d.target.antecedent)))
    if isinstance(d, ct.CI):
        return sq.s_imp_l(_cmplt_closed(d.element), sq.s_ax(d.target))
    if isinstance(d, ct.CL):
        a, b, c = d.a, d.b, d.c
        inner = sq.s_imp_l(sq.s_pass(sq.s_ax(a)), sq.s_ax(b))
        mid = sq.s_imp_l(sq.s_pass(inner), sq.s_ax(c))
        return sq.s_imp_r(sq.s_imp_r(mid))
    if isinstance(d, ct.CGen):
        raise ValueError("cmplt does not cover multigraph generators")
    raise TypeError(d)


def cmplt(d: ct.CatDeriv, ctx: Sequence[Formula] = ()) -> sq.SeqDeriv:
    """Categorical derivation of S => <Gamma>C to S|Gamma |- C."""
    c = split_iterated_hom(d.target, ctx)
    out = _cmplt_closed(d)
    remaining = d.target
    for a in ctx:
        # invert impR with a cut against the applicator A -o B | A |- B
        b = remaining.consequent
        applicator = sq.s_imp_l(sq.s_pass(sq.s_ax(a)), sq.s_ax(b))
        out = sq.scut(out, applicator)
        remaining = b
    assert out.succedent == c
    return out


# ---------------------------------------------------------------------------
# the six translations between normal forms and focused derivations

def nf2I(d: nf.NfDeriv) -> fc.FocDeriv:
    if isinstance(d, nf.NfImpI):
        return fc.f_imp_r(nf2I(d.body))
    if isinstance(d, nf.NfP2Nf):
        return fc.f_p2i(p2P(d.body))
    raise TypeError(f"not a phase-nf derivation: {d}")


def p2P(d: nf.NfDeriv) -> fc.FocDeriv:
    if isinstance(d, nf.NfPass):
        return fc.f_pass(p2P(d.body))
    if isinstance(d, nf.NfNe2P):
        return fc.f_f2p(ne2F(d.body))
    raise TypeError(f"not a phase-p derivation: {d}")


def ne2F_prime(f: nf.NfDeriv, g: fc.FocDeriv) -> fc.FocDeriv:
    """Push the arguments of a neutral onto a focusing continuation."""
    if isinstance(f, nf.NfAx):
        return g
    if isinstance(f, nf.NfImpE):
        return ne2F_prime(f.fun, fc.f_imp_l(nf2I(f.arg), g))
    raise TypeError(f"not a phase-ne derivation: {f}")


def ne2F(d: nf.NfDeriv) -> fc.FocDeriv:
    if not isinstance(d.succedent, Atom):
        raise ValueError("ne2F needs an atomic succedent (focused ax is atomic)")
    return ne2F_prime(d, fc.f_ax(d.succedent))


def I2nf(d: fc.FocDeriv) -> nf.NfDeriv:
    if isinstance(d, fc.FImpR):
        return nf.nf_imp_i(I2nf(d.body))
    if isinstance(d, fc.FP2I):
        return nf.nf_p2nf(P2p(d.body))
    raise TypeError(f"not a phase-I derivation: {d}")


def P2p(d: fc.FocDeriv) -> nf.NfDeriv:
    if isinstance(d, fc.FPass):
        return nf.nf_pass(P2p(d.body))
    if isinstance(d, fc.FF2P):
        return nf.nf_ne2p(F2ne(d.body))
    raise TypeError(f"not a phase-P derivation: {d}")


def F2ne_prime(f: nf.NfDeriv, g: fc.FocDeriv) -> nf.NfDeriv:
    """Unwind a focusing spine onto an accumulated neutral."""
    if isinstance(g, fc.FAx):
        return f
    if isinstance(g, fc.FImpL):
        return F2ne_prime(nf.nf_imp_e(f, I2nf(g.arg)), g.cont)
    raise TypeError(f"not a phase-F derivation: {g}")


def F2ne(d: fc.FocDeriv) -> nf.NfDeriv:
    return F2ne_prime(nf.nf_ax(d.stoup), d)
