"""Three-phase focused sequent calculus and both syntactic normalizers.

Phases control root-first search:

    I (inversion)  :  impR            S | Gamma -I-> A -o B
                      p2i             S | Gamma -I-> X       (X atomic)
    P (passivation):  pass            - | A, Gamma -P-> C
                      f2p             A | Gamma -P-> C
    F (focusing)   :  ax              X | -F-> X             (X atomic)
                      impL            A -o B | Gamma, Delta -F-> C

focus sends sequent-calculus derivations to phase-I derivations and
identifies exactly the congruent ones. hered does the same for
natural deduction via hereditary substitution: the phase-indexed cuts
below substitute derivations for stoup or context positions and
reduce every redex this creates, with the lexicographic measure
(cut formula size, derivation sizes) guaranteeing termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from . import nat_ded as nd
from . import seq_calc as sq
from .syntax import Atom, Context, Formula, Imp, Sequent
from .terms import CheckError, Term


@dataclass(frozen=True)
class FocDeriv:
    sequent: Sequent

    @property
    def stoup(self):
        return self.sequent.stoup

    @property
    def context(self) -> Context:
        return self.sequent.context

    @property
    def succedent(self) -> Formula:
        return self.sequent.succedent

    def __str__(self) -> str:
        return print_foc_term(self)


# phase I
@dataclass(frozen=True)
class FImpR(FocDeriv):
    body: FocDeriv


@dataclass(frozen=True)
class FP2I(FocDeriv):
    body: FocDeriv


# phase P
@dataclass(frozen=True)
class FPass(FocDeriv):
    body: FocDeriv


@dataclass(frozen=True)
class FF2P(FocDeriv):
    body: FocDeriv


# phase F
@dataclass(frozen=True)
class FAx(FocDeriv):
    pass


@dataclass(frozen=True)
class FImpL(FocDeriv):
    arg: FocDeriv   # - | Gamma -I-> A
    cont: FocDeriv  # B | Delta -F-> C

    @property
    def split(self) -> int:
        return len(self.arg.context)


PHASE_I, PHASE_P, PHASE_F = "I", "P", "F"

_PHASES = {FImpR: PHASE_I, FP2I: PHASE_I, FPass: PHASE_P, FF2P: PHASE_P,
           FAx: PHASE_F, FImpL: PHASE_F}


def phase_of(d: FocDeriv) -> str:
    return _PHASES[type(d)]


def f_imp_r(f: FocDeriv) -> FImpR:
    if phase_of(f) != PHASE_I or not f.context:
        raise ValueError("impR needs a phase-I premise with nonempty context")
    ctx, a = f.context[:-1], f.context[-1]
    return FImpR(Sequent(f.stoup, ctx, Imp(a, f.succedent)), f)


def f_p2i(f: FocDeriv) -> FP2I:
    if phase_of(f) != PHASE_P or not isinstance(f.succedent, Atom):
        raise ValueError("p2i needs a phase-P premise with atomic succedent")
    return FP2I(f.sequent, f)


def f_pass(f: FocDeriv) -> FPass:
    if phase_of(f) != PHASE_P or f.stoup is None:
        raise ValueError("pass needs a phase-P premise with a stoup")
    return FPass(Sequent(None, (f.stoup,) + f.context, f.succedent), f)


def f_f2p(f: FocDeriv) -> FF2P:
    if phase_of(f) != PHASE_F or f.stoup is None:
        raise ValueError("f2p needs a phase-F premise with a stoup")
    return FF2P(f.sequent, f)


def f_ax(x: Formula) -> FAx:
    if not isinstance(x, Atom):
        raise ValueError("focused ax is restricted to atoms")
    return FAx(Sequent(x, (), x))


def f_imp_l(f: FocDeriv, g: FocDeriv) -> FImpL:
    if phase_of(f) != PHASE_I or f.stoup is not None:
        raise ValueError("impL argument premise must be phase I with empty stoup")
    if phase_of(g) != PHASE_F or g.stoup is None:
        raise ValueError("impL continuation premise must be phase F with a stoup")
    seq = Sequent(Imp(f.succedent, g.stoup), f.context + g.context, g.succedent)
    return FImpL(seq, f, g)


def check_foc(t: Term, goal: Sequent, phase: str = PHASE_I,
              path: Tuple[str, ...] = ()) -> FocDeriv:
    """Elaborate a focused term at the given phase (default I)."""
    if phase == PHASE_I:
        if t.tag == "impR":
            if not isinstance(goal.succedent, Imp):
                raise CheckError(f"impR needs an implication succedent in {goal}", path)
            a, b = goal.succedent.antecedent, goal.succedent.consequent
            body = check_foc(t.children[0], Sequent(goal.stoup, goal.context + (a,), b),
                             PHASE_I, path + ("impR",))
            return FImpR(goal, body)
        if t.tag == "p2i":
            if not isinstance(goal.succedent, Atom):
                raise CheckError(f"p2i needs an atomic succedent in {goal}", path)
            return FP2I(goal, check_foc(t.children[0], goal, PHASE_P, path + ("p2i",)))
        raise CheckError(f"rule {t.tag!r} is not a phase-I rule", path)
    if phase == PHASE_P:
        if t.tag == "pass":
            if goal.stoup is not None or not goal.context:
                raise CheckError(f"pass does not apply to {goal}", path)
            sub = Sequent(goal.context[0], goal.context[1:], goal.succedent)
            return FPass(goal, check_foc(t.children[0], sub, PHASE_P, path + ("pass",)))
        if t.tag == "f2p":
            if goal.stoup is None:
                raise CheckError(f"f2p needs a stoup in {goal}", path)
            return FF2P(goal, check_foc(t.children[0], goal, PHASE_F, path + ("f2p",)))
        raise CheckError(f"rule {t.tag!r} is not a phase-P rule", path)
    if phase == PHASE_F:
        if t.tag == "ax":
            if (not isinstance(goal.succedent, Atom) or goal.context
                    or goal.stoup != goal.succedent):
                raise CheckError(f"focused ax does not prove {goal}", path)
            return f_ax(goal.succedent)
        if t.tag == "impL":
            if not isinstance(goal.stoup, Imp):
                raise CheckError(f"impL needs an implication stoup in {goal}", path)
            if len(t.indices) != 1:
                raise CheckError("impL needs a split index", path)
            k = t.indices[0]
            if not 0 <= k <= len(goal.context):
                raise CheckError(f"split {k} out of range in {goal}", path)
            a, b = goal.stoup.antecedent, goal.stoup.consequent
            f = check_foc(t.children[0], Sequent(None, goal.context[:k], a),
                          PHASE_I, path + (f"impL[{k}].0",))
            g = check_foc(t.children[1], Sequent(b, goal.context[k:], goal.succedent),
                          PHASE_F, path + (f"impL[{k}].1",))
            return FImpL(goal, f, g)
        raise CheckError(f"rule {t.tag!r} is not a phase-F rule", path)
    raise CheckError(f"unknown phase {phase!r}", path)


def infer_root_phase(t: Term) -> str:
    return {"impR": PHASE_I, "p2i": PHASE_I, "pass": PHASE_P, "f2p": PHASE_P,
            "ax": PHASE_F, "impL": PHASE_F}.get(t.tag, PHASE_I)


def print_foc_term(d: FocDeriv) -> str:
    if isinstance(d, FImpR):
        return f"impR({print_foc_term(d.body)})"
    if isinstance(d, FP2I):
        return f"p2i({print_foc_term(d.body)})"
    if isinstance(d, FPass):
        return f"pass({print_foc_term(d.body)})"
    if isinstance(d, FF2P):
        return f"f2p({print_foc_term(d.body)})"
    if isinstance(d, FAx):
        return "ax"
    if isinstance(d, FImpL):
        return f"impL[{d.split}]({print_foc_term(d.arg)},{print_foc_term(d.cont)})"
    raise TypeError(d)


# ---------------------------------------------------------------------------
# embeddings into the sequent calculus and natural deduction

def emb_I(d: FocDeriv) -> sq.SeqDeriv:
    if isinstance(d, FImpR):
        return sq.s_imp_r(emb_I(d.body))
    if isinstance(d, FP2I):
        return emb_P(d.body)
    raise TypeError(f"not a phase-I derivation: {d}")


def emb_P(d: FocDeriv) -> sq.SeqDeriv:
    if isinstance(d, FPass):
        return sq.s_pass(emb_P(d.body))
    if isinstance(d, FF2P):
        return emb_F(d.body)
    raise TypeError(f"not a phase-P derivation: {d}")


def emb_F(d: FocDeriv) -> sq.SeqDeriv:
    if isinstance(d, FAx):
        return sq.s_ax(d.succedent)
    if isinstance(d, FImpL):
        return sq.s_imp_l(emb_I(d.arg), emb_F(d.cont))
    raise TypeError(f"not a phase-F derivation: {d}")


def emb_nd_I(d: FocDeriv) -> nd.NdDeriv:
    if isinstance(d, FImpR):
        return nd.n_imp_i(emb_nd_I(d.body))
    if isinstance(d, FP2I):
        return emb_nd_P(d.body)
    raise TypeError(f"not a phase-I derivation: {d}")


def emb_nd_P(d: FocDeriv) -> nd.NdDeriv:
    if isinstance(d, FPass):
        return nd.n_pass(emb_nd_P(d.body))
    if isinstance(d, FF2P):
        return emb_nd_F(d.body)
    raise TypeError(f"not a phase-P derivation: {d}")


def emb_nd_F(d: FocDeriv) -> nd.NdDeriv:
    """Translate a focusing spine to an application spine, accumulator style."""
    acc = nd.n_ax(d.stoup)
    while isinstance(d, FImpL):
        acc = nd.n_imp_e(acc, emb_nd_I(d.arg))
        d = d.cont
    if not isinstance(d, FAx):
        raise TypeError(f"not a phase-F derivation: {d}")
    return acc


# ---------------------------------------------------------------------------
# admissible rules in phase I, and the focusing normalizer

def pass_I(f: FocDeriv) -> FocDeriv:
    if isinstance(f, FImpR):
        return f_imp_r(pass_I(f.body))
    if isinstance(f, FP2I):
        return f_p2i(f_pass(f.body))
    raise TypeError(f"pass_I needs a phase-I derivation: {f}")


def imp_l_I(f: FocDeriv, g: FocDeriv) -> FocDeriv:
    """impL admissible in phase I: peel impR off g, then emit impL."""
    if isinstance(g, FImpR):
        return f_imp_r(imp_l_I(f, g.body))
    if isinstance(g, FP2I) and isinstance(g.body, FF2P):
        return f_p2i(f_f2p(f_imp_l(f, g.body.body)))
    raise TypeError(f"imp_l_I needs a phase-I continuation with a stoup: {g}")


def ax_I(a: Formula) -> FocDeriv:
    """Eta expansion of ax at an arbitrary formula, via imp_l_I."""
    if isinstance(a, Atom):
        return f_p2i(f_f2p(f_ax(a)))
    return f_imp_r(imp_l_I(pass_I(ax_I(a.antecedent)), ax_I(a.consequent)))


def focus(f: sq.SeqDeriv) -> FocDeriv:
    """Reduction-free normalization into the focused subcalculus."""
    if isinstance(f, sq.SAx):
        return ax_I(f.succedent)
    if isinstance(f, sq.SPass):
        return pass_I(focus(f.body))
    if isinstance(f, sq.SImpR):
        return f_imp_r(focus(f.body))
    if isinstance(f, sq.SImpL):
        return imp_l_I(focus(f.arg), focus(f.cont))
    raise TypeError(f)


# ---------------------------------------------------------------------------
# hereditary substitutions
#
# scut_spine substitutes an inversion-phase derivation for the head
# variable of a focusing spine; when the spine applies the head, the
# substituted impR is consumed and cutting recurses at the strictly
# smaller argument and result formulas.

def _scut_spine(f: FocDeriv, h: FocDeriv) -> FocDeriv:
    """f : S|Gamma -I-> A into the stoup of the spine h : A|Delta -F-> X."""
    if isinstance(h, FAx):
        return f
    if isinstance(h, FImpL):
        if not isinstance(f, FImpR):
            raise AssertionError("implication succedent must be impR-rooted in phase I")
        return _scut_spine(ccut_I(h.arg, f.body, len(f.body.context) - 1), h.cont)
    raise TypeError(h)


def scut_I(f: FocDeriv, g: FocDeriv) -> FocDeriv:
    """Phase-I stoup cut: f : S|Gamma -I-> A, g : A|Delta -I-> C."""
    if g.stoup != f.succedent:
        raise ValueError(f"scut_I mismatch: {f.sequent} vs {g.sequent}")
    if isinstance(g, FImpR):
        return f_imp_r(scut_I(f, g.body))
    if isinstance(g, FP2I) and isinstance(g.body, FF2P):
        return _scut_spine(f, g.body.body)
    raise TypeError(g)


def ccut_I(e: FocDeriv, g: FocDeriv, pos: int) -> FocDeriv:
    """Phase-I context cut: e : -|Gamma -I-> A into position pos of g."""
    if not 0 <= pos < len(g.context) or g.context[pos] != e.succedent:
        raise ValueError(f"ccut_I: no {e.succedent} at position {pos} of {g.sequent}")
    if isinstance(g, FImpR):
        return f_imp_r(ccut_I(e, g.body, pos))
    if isinstance(g, FP2I):
        return f_p2i(_ccut_P(e, g.body, pos))
    raise TypeError(g)


def _ccut_P(e: FocDeriv, g: FocDeriv, pos: int) -> FocDeriv:
    if isinstance(g, FPass):
        if pos == 0:
            # the cut lands on the passivated formula: substitute into
            # the stoup of the spine underneath, hereditarily
            spine = g.body
            if not isinstance(spine, FF2P):
                raise AssertionError("phase-P derivation with a stoup must be f2p")
            out = _scut_spine(e, spine.body)
            if not isinstance(out, FP2I):
                raise AssertionError("atomic phase-I derivation must be p2i-rooted")
            return out.body
        return f_pass(_ccut_P(e, g.body, pos - 1))
    if isinstance(g, FF2P):
        return f_f2p(_ccut_F(e, g.body, pos))
    raise TypeError(g)


def _ccut_F(e: FocDeriv, g: FocDeriv, pos: int) -> FocDeriv:
    if isinstance(g, FImpL):
        k = g.split
        if pos < k:
            return f_imp_l(ccut_I(e, g.arg, pos), g.cont)
        return f_imp_l(g.arg, _ccut_F(e, g.cont, pos - k))
    raise AssertionError("unreachable: ax has no context positions")


def _lift_P(f: FocDeriv) -> FocDeriv:
    return f_p2i(f)


def _lift_F(f: FocDeriv) -> FocDeriv:
    return f_p2i(f_f2p(f))


def scut_P(f: FocDeriv, g: FocDeriv) -> FocDeriv:
    """Phase-P stoup cut, via the phase-I engine."""
    out = scut_I(_lift_P(f), _lift_P(g))
    return out.body


def ccut_P(e: FocDeriv, g: FocDeriv, pos: int) -> FocDeriv:
    out = ccut_I(_lift_P(e), _lift_P(g), pos)
    return out.body


def scut_F(f: FocDeriv, g: FocDeriv) -> FocDeriv:
    """Phase-F stoup cut; the cut formula is necessarily atomic."""
    if isinstance(g, FAx):
        return f
    raise ValueError("phase-F continuation with a composite stoup cannot occur")


def ccut_F(e: FocDeriv, g: FocDeriv, pos: int) -> FocDeriv:
    """Phase-F context cut with a phase-I left premise."""
    return _ccut_F(e, g, pos)


def imp_e_I(f: FocDeriv, g: FocDeriv) -> FocDeriv:
    """Application admissible in phase I, forced by beta conversion."""
    if not isinstance(f, FImpR):
        raise TypeError("imp_e_I function premise must be impR-rooted")
    return ccut_I(g, f.body, len(f.body.context) - 1)


def ax_I_nd(a: Formula) -> FocDeriv:
    """Eta-expanded identity built spine-first, without imp_l_I.

    Mirrors semantic reflection: the spine applies the head variable
    to eta expansions of fresh context variables, then the impR
    wrappers are put back on the outside.
    """
    def build(remaining: Formula, args) -> FocDeriv:
        if isinstance(remaining, Atom):
            spine: FocDeriv = f_ax(remaining)
            for arg in reversed(args):
                spine = f_imp_l(arg, spine)
            return f_p2i(f_f2p(spine))
        fresh = pass_I(ax_I_nd(remaining.antecedent))
        return f_imp_r(build(remaining.consequent, args + [fresh]))

    return build(a, [])


def hered(f: nd.NdDeriv) -> FocDeriv:
    """Normalization by hereditary substitution."""
    if isinstance(f, nd.NAx):
        return ax_I_nd(f.succedent)
    if isinstance(f, nd.NPass):
        return pass_I(hered(f.body))
    if isinstance(f, nd.NImpI):
        return f_imp_r(hered(f.body))
    if isinstance(f, nd.NImpE):
        return imp_e_I(hered(f.fun), hered(f.arg))
    raise TypeError(f)
