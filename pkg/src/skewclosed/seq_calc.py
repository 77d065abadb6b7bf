"""Cut-free sequent calculus: ax, pass, impR, impL.

Rules (S a stoup, Gamma/Delta contexts):

    ax   :  A | |- A
    pass :  A | Gamma |- C          =>  - | A, Gamma |- C
    impR :  S | Gamma, A |- B       =>  S | Gamma |- A -o B
    impL :  - | Gamma |- A   and   B | Delta |- C
                                    =>  A -o B | Gamma, Delta |- C

impL acts only on the stoup. Derivations carry their conclusion
sequent; constructors refuse ill-typed nodes. The two cut rules and
the context left rule impC are admissible, act inverts pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Tuple

from .syntax import Atom, Context, Formula, Imp, Sequent
from .terms import CheckError, Term


@dataclass(frozen=True)
class SeqDeriv:
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
        return print_seq_term(self)


@dataclass(frozen=True)
class SAx(SeqDeriv):
    pass


@dataclass(frozen=True)
class SPass(SeqDeriv):
    body: SeqDeriv


@dataclass(frozen=True)
class SImpR(SeqDeriv):
    body: SeqDeriv


@dataclass(frozen=True)
class SImpL(SeqDeriv):
    arg: SeqDeriv   # - | Gamma |- A
    cont: SeqDeriv  # B | Delta |- C

    @property
    def split(self) -> int:
        return len(self.arg.context)


def s_ax(a: Formula) -> SAx:
    return SAx(Sequent(a, (), a))


def s_pass(f: SeqDeriv) -> SPass:
    if f.stoup is None:
        raise ValueError("pass needs a stoup formula")
    return SPass(Sequent(None, (f.stoup,) + f.context, f.succedent), f)


def s_imp_r(f: SeqDeriv) -> SImpR:
    if not f.context:
        raise ValueError("impR needs a nonempty context")
    ctx, a = f.context[:-1], f.context[-1]
    return SImpR(Sequent(f.stoup, ctx, Imp(a, f.succedent)), f)


def s_imp_l(f: SeqDeriv, g: SeqDeriv) -> SImpL:
    if f.stoup is not None:
        raise ValueError("impL first premise must have empty stoup")
    if g.stoup is None:
        raise ValueError("impL second premise must have a stoup")
    seq = Sequent(Imp(f.succedent, g.stoup), f.context + g.context, g.succedent)
    return SImpL(seq, f, g)


def check_seq(t: Term, goal: Sequent, path: Tuple[str, ...] = ()) -> SeqDeriv:
    """Elaborate a term against a goal sequent."""
    if t.tag == "ax":
        if goal.context or goal.stoup != goal.succedent:
            raise CheckError(f"ax does not prove {goal}", path)
        return s_ax(goal.succedent)
    if t.tag == "pass":
        if goal.stoup is not None or not goal.context:
            raise CheckError(f"pass does not apply to {goal}", path)
        body = check_seq(t.children[0], Sequent(goal.context[0], goal.context[1:], goal.succedent),
                         path + ("pass",))
        return SPass(goal, body)
    if t.tag == "impR":
        if not isinstance(goal.succedent, Imp):
            raise CheckError(f"impR needs an implication succedent in {goal}", path)
        a, b = goal.succedent.antecedent, goal.succedent.consequent
        body = check_seq(t.children[0], Sequent(goal.stoup, goal.context + (a,), b),
                         path + ("impR",))
        return SImpR(goal, body)
    if t.tag == "impL":
        if not isinstance(goal.stoup, Imp):
            raise CheckError(f"impL needs an implication stoup in {goal}", path)
        if len(t.indices) != 1:
            raise CheckError("impL needs a split index", path)
        k = t.indices[0]
        if not 0 <= k <= len(goal.context):
            raise CheckError(f"split {k} out of range in {goal}", path)
        a, b = goal.stoup.antecedent, goal.stoup.consequent
        f = check_seq(t.children[0], Sequent(None, goal.context[:k], a), path + (f"impL[{k}].0",))
        g = check_seq(t.children[1], Sequent(b, goal.context[k:], goal.succedent),
                      path + (f"impL[{k}].1",))
        return SImpL(goal, f, g)
    raise CheckError(f"unknown sequent-calculus rule {t.tag!r}", path)


def print_seq_term(d: SeqDeriv) -> str:
    if isinstance(d, SAx):
        return "ax"
    if isinstance(d, SPass):
        return f"pass({print_seq_term(d.body)})"
    if isinstance(d, SImpR):
        return f"impR({print_seq_term(d.body)})"
    if isinstance(d, SImpL):
        return f"impL[{d.split}]({print_seq_term(d.arg)},{print_seq_term(d.cont)})"
    raise TypeError(d)


def deriv_size(d: SeqDeriv) -> int:
    if isinstance(d, (SAx,)):
        return 1
    if isinstance(d, (SPass, SImpR)):
        return 1 + deriv_size(d.body)
    return 1 + deriv_size(d.arg) + deriv_size(d.cont)


# ---------------------------------------------------------------------------
# admissible cuts
#
# Standard structural recursion: scut inducts on its left premise, and
# on the right premise once the left one ends in impR; ccut inducts on
# the right premise. Termination measure is (cut formula size, total
# derivation size), lexicographically.

def scut(f: SeqDeriv, g: SeqDeriv) -> SeqDeriv:
    """Cut f : S|Gamma |- A against the stoup of g : A|Delta |- C."""
    if g.stoup != f.succedent:
        raise ValueError(f"scut mismatch: {f.sequent} vs {g.sequent}")
    if isinstance(f, SAx):
        return g
    if isinstance(f, SPass):
        return s_pass(scut(f.body, g))
    if isinstance(f, SImpL):
        return s_imp_l(f.arg, scut(f.cont, g))
    if isinstance(f, SImpR):
        if isinstance(g, SAx):
            return f
        if isinstance(g, SImpR):
            return s_imp_r(scut(f, g.body))
        if isinstance(g, SImpL):
            # hereditary step: f ends in impR, g consumes the cut formula
            return scut(ccut(g.arg, f.body, len(f.context)), g.cont)
    raise AssertionError("unreachable scut case")


def ccut(e: SeqDeriv, g: SeqDeriv, pos: int) -> SeqDeriv:
    """Cut e : -|Gamma |- A into position pos of g's context."""
    if e.stoup is not None:
        raise ValueError("ccut left premise must have empty stoup")
    if not 0 <= pos < len(g.context) or g.context[pos] != e.succedent:
        raise ValueError(f"ccut: no {e.succedent} at position {pos} of {g.sequent}")
    if isinstance(g, SPass):
        if pos == 0:
            return scut(e, g.body)
        return s_pass(ccut(e, g.body, pos - 1))
    if isinstance(g, SImpR):
        return s_imp_r(ccut(e, g.body, pos))
    if isinstance(g, SImpL):
        k = g.split
        if pos < k:
            return s_imp_l(ccut(e, g.arg, pos), g.cont)
        return s_imp_l(g.arg, ccut(e, g.cont, pos - k))
    raise AssertionError("unreachable ccut case")


def imp_c(e: SeqDeriv, g: SeqDeriv, pos: int) -> SeqDeriv:
    """Left rule on an implication in the passive context, via cut."""
    b = g.context[pos]
    return ccut(s_pass(s_imp_l(e, s_ax(b))), g, pos)


def act(f: SeqDeriv) -> SeqDeriv:
    """Inverse of pass: - | A, Gamma |- C becomes A | Gamma |- C."""
    if f.stoup is not None or not f.context:
        raise ValueError("act needs an empty stoup and nonempty context")
    if isinstance(f, SPass):
        return f.body
    if isinstance(f, SImpR):
        return s_imp_r(act(f.body))
    raise AssertionError("unreachable act case")  # ax, impL need a stoup


# ---------------------------------------------------------------------------
# generating equations of the congruence on sequent derivations

@dataclass(frozen=True)
class SeqEquation:
    name: str
    lhs: SeqDeriv
    rhs: SeqDeriv


def eta_equation(a: Formula, b: Formula) -> SeqEquation:
    lhs = s_ax(Imp(a, b))
    rhs = s_imp_r(s_imp_l(s_pass(s_ax(a)), s_ax(b)))
    return SeqEquation("eta", lhs, rhs)


def comm_pass_impr(f: SeqDeriv) -> SeqEquation:
    """pass(impR f) = impR(pass f), for f with a stoup and nonempty context."""
    return SeqEquation("comm-pass-impR", s_pass(s_imp_r(f)), s_imp_r(s_pass(f)))


def comm_impl_impr(f: SeqDeriv, g: SeqDeriv) -> SeqEquation:
    """impL(f, impR g) = impR(impL(f, g)), g with a stoup and nonempty context."""
    return SeqEquation("comm-impL-impR", s_imp_l(f, s_imp_r(g)), s_imp_r(s_imp_l(f, g)))


def seq_eq_generators(a: Formula, b: Formula, f: SeqDeriv, g: SeqDeriv) -> List[SeqEquation]:
    """One instance of each congruence generator family.

    f instantiates the pass/impR commutation (tight, nonempty context);
    g instantiates the impL/impR commutation continuation (tight,
    nonempty context); its argument premise is the eta expansion of a.
    """
    arg = s_pass(s_ax(a))
    return [
        eta_equation(a, b),
        comm_pass_impr(f),
        comm_impl_impr(arg, g),
    ]


# bounded enumeration of raw sequent derivations, used as a test oracle

def iter_seq_derivations(goal: Sequent, max_nodes: int) -> Iterator[SeqDeriv]:
    """All cut-free derivations of goal with at most max_nodes rules."""
    if max_nodes <= 0:
        return
    if goal.stoup is not None and not goal.context and goal.stoup == goal.succedent:
        yield s_ax(goal.succedent)
    if goal.stoup is None and goal.context:
        sub = Sequent(goal.context[0], goal.context[1:], goal.succedent)
        for b in iter_seq_derivations(sub, max_nodes - 1):
            yield s_pass(b)
    if isinstance(goal.succedent, Imp):
        sub = Sequent(goal.stoup, goal.context + (goal.succedent.antecedent,),
                      goal.succedent.consequent)
        for b in iter_seq_derivations(sub, max_nodes - 1):
            yield s_imp_r(b)
    if isinstance(goal.stoup, Imp):
        a, b = goal.stoup.antecedent, goal.stoup.consequent
        for k in range(len(goal.context) + 1):
            for left in iter_seq_derivations(Sequent(None, goal.context[:k], a), max_nodes - 1):
                budget = max_nodes - 1 - deriv_size(left)
                for right in iter_seq_derivations(Sequent(b, goal.context[k:], goal.succedent),
                                                  budget):
                    yield s_imp_l(left, right)
