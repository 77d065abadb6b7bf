"""Natural deduction: a planar lambda calculus with a stoup.

Rules:

    ax   :  A | |- A
    pass :  A | Gamma |- C        =>  - | A, Gamma |- C
    impI :  S | Gamma, A |- B     =>  S | Gamma |- A -o B
    impE :  S | Gamma |- A -o B   and   - | Delta |- A
                                  =>  S | Gamma, Delta |- B

There are no named variables: every variable is used exactly once and
in declaration order, so positions determine binding and the
derivation tree is the term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .syntax import Context, Formula, Imp, Sequent
from .terms import CheckError, Term


@dataclass(frozen=True)
class NdDeriv:
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
        return print_nd_term(self)


@dataclass(frozen=True)
class NAx(NdDeriv):
    pass


@dataclass(frozen=True)
class NPass(NdDeriv):
    body: NdDeriv


@dataclass(frozen=True)
class NImpI(NdDeriv):
    body: NdDeriv


@dataclass(frozen=True)
class NImpE(NdDeriv):
    fun: NdDeriv  # S | Gamma |- A -o B
    arg: NdDeriv  # - | Delta |- A

    @property
    def split(self) -> int:
        return len(self.fun.context)


def n_ax(a: Formula) -> NAx:
    return NAx(Sequent(a, (), a))


def n_pass(f: NdDeriv) -> NPass:
    if f.stoup is None:
        raise ValueError("pass needs a stoup formula")
    return NPass(Sequent(None, (f.stoup,) + f.context, f.succedent), f)


def n_imp_i(f: NdDeriv) -> NImpI:
    if not f.context:
        raise ValueError("impI needs a nonempty context")
    ctx, a = f.context[:-1], f.context[-1]
    return NImpI(Sequent(f.stoup, ctx, Imp(a, f.succedent)), f)


def n_imp_e(f: NdDeriv, g: NdDeriv) -> NImpE:
    if not isinstance(f.succedent, Imp):
        raise ValueError("impE function premise must have implication type")
    if g.stoup is not None:
        raise ValueError("impE argument premise must have empty stoup")
    if f.succedent.antecedent != g.succedent:
        raise ValueError(f"impE argument type mismatch: {f.succedent} vs {g.succedent}")
    seq = Sequent(f.stoup, f.context + g.context, f.succedent.consequent)
    return NImpE(seq, f, g)


def check_nd(t: Term, goal: Sequent, path: Tuple[str, ...] = ()) -> NdDeriv:
    if t.tag == "ax":
        if goal.context or goal.stoup != goal.succedent:
            raise CheckError(f"ax does not prove {goal}", path)
        return n_ax(goal.succedent)
    if t.tag == "pass":
        if goal.stoup is not None or not goal.context:
            raise CheckError(f"pass does not apply to {goal}", path)
        body = check_nd(t.children[0], Sequent(goal.context[0], goal.context[1:], goal.succedent),
                        path + ("pass",))
        return NPass(goal, body)
    if t.tag == "impI":
        if not isinstance(goal.succedent, Imp):
            raise CheckError(f"impI needs an implication succedent in {goal}", path)
        a, b = goal.succedent.antecedent, goal.succedent.consequent
        body = check_nd(t.children[0], Sequent(goal.stoup, goal.context + (a,), b),
                        path + ("impI",))
        return NImpI(goal, body)
    if t.tag == "impE":
        if len(t.indices) != 1 or len(t.formulas) != 1:
            raise CheckError("impE needs a split index and the argument formula, impE[k,A]", path)
        k = t.indices[0]
        a = t.formulas[0]
        if not 0 <= k <= len(goal.context):
            raise CheckError(f"split {k} out of range in {goal}", path)
        f = check_nd(t.children[0],
                     Sequent(goal.stoup, goal.context[:k], Imp(a, goal.succedent)),
                     path + (f"impE[{k}].0",))
        g = check_nd(t.children[1], Sequent(None, goal.context[k:], a), path + (f"impE[{k}].1",))
        return NImpE(goal, f, g)
    raise CheckError(f"unknown natural-deduction rule {t.tag!r}", path)


def print_nd_term(d: NdDeriv) -> str:
    if isinstance(d, NAx):
        return "ax"
    if isinstance(d, NPass):
        return f"pass({print_nd_term(d.body)})"
    if isinstance(d, NImpI):
        return f"impI({print_nd_term(d.body)})"
    if isinstance(d, NImpE):
        a = d.fun.succedent.antecedent
        return f"impE[{d.split},{a}]({print_nd_term(d.fun)},{print_nd_term(d.arg)})"
    raise TypeError(d)


def nd_size(d: NdDeriv) -> int:
    if isinstance(d, NAx):
        return 1
    if isinstance(d, (NPass, NImpI)):
        return 1 + nd_size(d.body)
    return 1 + nd_size(d.fun) + nd_size(d.arg)


# ---------------------------------------------------------------------------
# admissible cuts (plain substitution, no reduction of created redexes)

def nd_scut(f: NdDeriv, g: NdDeriv) -> NdDeriv:
    """Substitute f : S|Gamma |- A for the stoup variable of g : A|Delta |- C."""
    if g.stoup != f.succedent:
        raise ValueError(f"nd_scut mismatch: {f.sequent} vs {g.sequent}")
    if isinstance(g, NAx):
        return f
    if isinstance(g, NImpI):
        return n_imp_i(nd_scut(f, g.body))
    if isinstance(g, NImpE):
        return n_imp_e(nd_scut(f, g.fun), g.arg)
    raise AssertionError("unreachable nd_scut case")


def nd_ccut(e: NdDeriv, g: NdDeriv, pos: int) -> NdDeriv:
    """Substitute e : -|Gamma |- A for the context variable at pos of g."""
    if e.stoup is not None:
        raise ValueError("nd_ccut left premise must have empty stoup")
    if not 0 <= pos < len(g.context) or g.context[pos] != e.succedent:
        raise ValueError(f"nd_ccut: no {e.succedent} at position {pos} of {g.sequent}")
    if isinstance(g, NPass):
        if pos == 0:
            return nd_scut(e, g.body)
        return n_pass(nd_ccut(e, g.body, pos - 1))
    if isinstance(g, NImpI):
        return n_imp_i(nd_ccut(e, g.body, pos))
    if isinstance(g, NImpE):
        k = g.split
        if pos < k:
            return n_imp_e(nd_ccut(e, g.fun, pos), g.arg)
        return n_imp_e(g.fun, nd_ccut(e, g.arg, pos - k))
    raise AssertionError("unreachable nd_ccut case")


# ---------------------------------------------------------------------------
# generating equations of beta-eta congruence

@dataclass(frozen=True)
class NdEquation:
    name: str
    lhs: NdDeriv
    rhs: NdDeriv


def beta_equation(f: NdDeriv, g: NdDeriv) -> NdEquation:
    """impE(impI f, g) = ccut(g, f) at the last position of f's context."""
    lhs = n_imp_e(n_imp_i(f), g)
    rhs = nd_ccut(g, f, len(f.context) - 1)
    return NdEquation("beta", lhs, rhs)


def eta_equation_nd(f: NdDeriv) -> NdEquation:
    """f = impI(impE(f, pass ax)) for f of implication type."""
    a = f.succedent.antecedent
    rhs = n_imp_i(n_imp_e(f, n_pass(n_ax(a))))
    return NdEquation("eta", f, rhs)


def comm_pass_impi(f: NdDeriv) -> NdEquation:
    return NdEquation("comm-pass-impI", n_pass(n_imp_i(f)), n_imp_i(n_pass(f)))


def comm_pass_impe(f: NdDeriv, g: NdDeriv) -> NdEquation:
    return NdEquation("comm-pass-impE", n_pass(n_imp_e(f, g)), n_imp_e(n_pass(f), g))


def nd_eq_generators(f_beta: NdDeriv, g_beta: NdDeriv, f_eta: NdDeriv,
                     f_comm_i: NdDeriv, f_comm_e: NdDeriv, g_comm_e: NdDeriv) -> List[NdEquation]:
    """One instance of each of the four congruence generator families."""
    return [
        beta_equation(f_beta, g_beta),
        eta_equation_nd(f_eta),
        comm_pass_impi(f_comm_i),
        comm_pass_impe(f_comm_e, g_comm_e),
    ]
