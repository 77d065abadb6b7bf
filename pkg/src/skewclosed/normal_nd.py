"""Beta-eta-long normal forms and normalization by evaluation.

Normal natural deduction derivations come in three phases:

    nf :  impI            S | Gamma -nf-> A -o B
          p2nf            S | Gamma -nf-> X        (X atomic)
    p  :  pass            - | A, Gamma -p-> C
          ne2p            A | Gamma -p-> C
    ne :  ax              A | -ne-> A              (A unrestricted)
          impE            A' | Gamma, Delta -ne-> B

A normal form is an iterated lambda over a neutral of atomic type; a
neutral is the stoup variable applied to a spine of normal arguments.

NbE interprets formulas as context-indexed families: at an atom the
family of normal forms, at an implication a function value taking an
argument value over a loose context extension. eval maps derivations
to values, reflect lifts neutrals into values, reify extracts normal
forms, and nbe evaluates in the identity environment and reifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Tuple, Union

from . import nat_ded as nd
from .syntax import Atom, Context, Formula, Imp, Sequent, Stoup
from .terms import CheckError, Term


@dataclass(frozen=True)
class NfDeriv:
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
        return print_nf_term(self)


# phase nf
@dataclass(frozen=True)
class NfImpI(NfDeriv):
    body: NfDeriv


@dataclass(frozen=True)
class NfP2Nf(NfDeriv):
    body: NfDeriv


# phase p
@dataclass(frozen=True)
class NfPass(NfDeriv):
    body: NfDeriv


@dataclass(frozen=True)
class NfNe2P(NfDeriv):
    body: NfDeriv


# phase ne
@dataclass(frozen=True)
class NfAx(NfDeriv):
    pass


@dataclass(frozen=True)
class NfImpE(NfDeriv):
    fun: NfDeriv  # ne: A' | Gamma -ne-> A -o B
    arg: NfDeriv  # nf: - | Delta -nf-> A

    @property
    def split(self) -> int:
        return len(self.fun.context)


PH_NF, PH_P, PH_NE = "nf", "p", "ne"

_PHASES = {NfImpI: PH_NF, NfP2Nf: PH_NF, NfPass: PH_P, NfNe2P: PH_P,
           NfAx: PH_NE, NfImpE: PH_NE}


def nf_phase(d: NfDeriv) -> str:
    return _PHASES[type(d)]


def nf_imp_i(f: NfDeriv) -> NfImpI:
    if nf_phase(f) != PH_NF or not f.context:
        raise ValueError("impI needs a phase-nf premise with nonempty context")
    ctx, a = f.context[:-1], f.context[-1]
    return NfImpI(Sequent(f.stoup, ctx, Imp(a, f.succedent)), f)


def nf_p2nf(f: NfDeriv) -> NfP2Nf:
    if nf_phase(f) != PH_P or not isinstance(f.succedent, Atom):
        raise ValueError("p2nf needs a phase-p premise with atomic succedent")
    return NfP2Nf(f.sequent, f)


def nf_pass(f: NfDeriv) -> NfPass:
    if nf_phase(f) != PH_P or f.stoup is None:
        raise ValueError("pass needs a phase-p premise with a stoup")
    return NfPass(Sequent(None, (f.stoup,) + f.context, f.succedent), f)


def nf_ne2p(f: NfDeriv) -> NfNe2P:
    if nf_phase(f) != PH_NE or f.stoup is None:
        raise ValueError("ne2p needs a phase-ne premise (which has a stoup)")
    return NfNe2P(f.sequent, f)


def nf_ax(a: Formula) -> NfAx:
    return NfAx(Sequent(a, (), a))


def nf_imp_e(f: NfDeriv, g: NfDeriv) -> NfImpE:
    if nf_phase(f) != PH_NE or not isinstance(f.succedent, Imp):
        raise ValueError("impE function premise must be neutral of implication type")
    if nf_phase(g) != PH_NF or g.stoup is not None:
        raise ValueError("impE argument premise must be a loose normal form")
    if f.succedent.antecedent != g.succedent:
        raise ValueError(f"impE argument type mismatch: {f.succedent} vs {g.succedent}")
    seq = Sequent(f.stoup, f.context + g.context, f.succedent.consequent)
    return NfImpE(seq, f, g)


def check_nf(t: Term, goal: Sequent, phase: str = PH_NF,
             path: Tuple[str, ...] = ()) -> NfDeriv:
    if phase == PH_NF:
        if t.tag == "impI":
            if not isinstance(goal.succedent, Imp):
                raise CheckError(f"impI needs an implication succedent in {goal}", path)
            a, b = goal.succedent.antecedent, goal.succedent.consequent
            body = check_nf(t.children[0], Sequent(goal.stoup, goal.context + (a,), b),
                            PH_NF, path + ("impI",))
            return NfImpI(goal, body)
        if t.tag == "p2nf":
            if not isinstance(goal.succedent, Atom):
                raise CheckError(f"p2nf needs an atomic succedent in {goal}", path)
            return NfP2Nf(goal, check_nf(t.children[0], goal, PH_P, path + ("p2nf",)))
        raise CheckError(f"rule {t.tag!r} is not a phase-nf rule", path)
    if phase == PH_P:
        if t.tag == "pass":
            if goal.stoup is not None or not goal.context:
                raise CheckError(f"pass does not apply to {goal}", path)
            sub = Sequent(goal.context[0], goal.context[1:], goal.succedent)
            return NfPass(goal, check_nf(t.children[0], sub, PH_P, path + ("pass",)))
        if t.tag == "ne2p":
            if goal.stoup is None:
                raise CheckError(f"ne2p needs a stoup in {goal}", path)
            return NfNe2P(goal, check_nf(t.children[0], goal, PH_NE, path + ("ne2p",)))
        raise CheckError(f"rule {t.tag!r} is not a phase-p rule", path)
    if phase == PH_NE:
        if t.tag == "ax":
            if goal.context or goal.stoup != goal.succedent:
                raise CheckError(f"ax does not prove {goal}", path)
            return nf_ax(goal.succedent)
        if t.tag == "impE":
            if len(t.indices) != 1 or len(t.formulas) != 1:
                raise CheckError("impE needs a split and the argument formula, impE[k,A]", path)
            k, a = t.indices[0], t.formulas[0]
            if not 0 <= k <= len(goal.context):
                raise CheckError(f"split {k} out of range in {goal}", path)
            f = check_nf(t.children[0],
                         Sequent(goal.stoup, goal.context[:k], Imp(a, goal.succedent)),
                         PH_NE, path + (f"impE[{k}].0",))
            g = check_nf(t.children[1], Sequent(None, goal.context[k:], a),
                         PH_NF, path + (f"impE[{k}].1",))
            return NfImpE(goal, f, g)
        raise CheckError(f"rule {t.tag!r} is not a phase-ne rule", path)
    raise CheckError(f"unknown phase {phase!r}", path)


def infer_nf_root_phase(t: Term) -> str:
    return {"impI": PH_NF, "p2nf": PH_NF, "pass": PH_P, "ne2p": PH_P,
            "ax": PH_NE, "impE": PH_NE}.get(t.tag, PH_NF)


def print_nf_term(d: NfDeriv) -> str:
    if isinstance(d, NfImpI):
        return f"impI({print_nf_term(d.body)})"
    if isinstance(d, NfP2Nf):
        return f"p2nf({print_nf_term(d.body)})"
    if isinstance(d, NfPass):
        return f"pass({print_nf_term(d.body)})"
    if isinstance(d, NfNe2P):
        return f"ne2p({print_nf_term(d.body)})"
    if isinstance(d, NfAx):
        return "ax"
    if isinstance(d, NfImpE):
        a = d.fun.succedent.antecedent
        return f"impE[{d.split},{a}]({print_nf_term(d.fun)},{print_nf_term(d.arg)})"
    raise TypeError(d)


# embeddings into full natural deduction

def emb_nf(d: NfDeriv) -> nd.NdDeriv:
    if isinstance(d, NfImpI):
        return nd.n_imp_i(emb_nf(d.body))
    if isinstance(d, NfP2Nf):
        return emb_p(d.body)
    raise TypeError(f"not a phase-nf derivation: {d}")


def emb_p(d: NfDeriv) -> nd.NdDeriv:
    if isinstance(d, NfPass):
        return nd.n_pass(emb_p(d.body))
    if isinstance(d, NfNe2P):
        return emb_ne(d.body)
    raise TypeError(f"not a phase-p derivation: {d}")


def emb_ne(d: NfDeriv) -> nd.NdDeriv:
    if isinstance(d, NfAx):
        return nd.n_ax(d.succedent)
    if isinstance(d, NfImpE):
        return nd.n_imp_e(emb_ne(d.fun), emb_nf(d.arg))
    raise TypeError(f"not a phase-ne derivation: {d}")


# ---------------------------------------------------------------------------
# normalization by evaluation
#
# A semantic value of formula C over a world S|Gamma is an NfDeriv of
# S|Gamma -nf-> C when C is atomic, and a FunVal otherwise. Function
# values are closures over immutable data only; a value always knows
# its own world, so application does not need the block context passed
# separately.

@dataclass(frozen=True)
class FunVal:
    stoup: Stoup
    context: Context
    formula: Formula  # an implication
    apply: Callable[["SemVal"], "SemVal"]


SemVal = Union[NfDeriv, FunVal]


def val_formula(v: SemVal) -> Formula:
    return v.succedent if isinstance(v, NfDeriv) else v.formula


def val_world(v: SemVal) -> Tuple[Stoup, Context]:
    if isinstance(v, NfDeriv):
        return v.stoup, v.context
    return v.stoup, v.context


@dataclass(frozen=True)
class Env:
    """Interpretation of an antecedent: one value per formula of S|Gamma.

    Context values always live over loose worlds; the stoup value, when
    present, carries the world's stoup. Block boundaries are implicit
    in each value's own world.
    """
    stoup_val: Optional[SemVal]
    ctx_vals: Tuple[SemVal, ...]

    def world(self) -> Tuple[Stoup, Context]:
        stoup: Stoup = None
        ctx: Context = ()
        if self.stoup_val is not None:
            stoup, ctx0 = val_world(self.stoup_val)
            ctx += ctx0
        for v in self.ctx_vals:
            sv, cv = val_world(v)
            assert sv is None
            ctx += cv
        return stoup, ctx


def eval_nd(d: nd.NdDeriv, env: Env) -> SemVal:
    """Interpret a natural deduction derivation in an environment."""
    if isinstance(d, nd.NAx):
        assert env.stoup_val is not None and not env.ctx_vals
        return env.stoup_val
    if isinstance(d, nd.NPass):
        return eval_nd(d.body, Env(env.ctx_vals[0], env.ctx_vals[1:]))
    if isinstance(d, nd.NImpI):
        stoup, ctx = env.world()
        def apply(a: SemVal, d=d, env=env) -> SemVal:
            return eval_nd(d.body, Env(env.stoup_val, env.ctx_vals + (a,)))
        return FunVal(stoup, ctx, d.succedent, apply)
    if isinstance(d, nd.NImpE):
        n = len(d.fun.context)
        env_f = Env(env.stoup_val, env.ctx_vals[:n])
        env_g = Env(None, env.ctx_vals[n:])
        fun = eval_nd(d.fun, env_f)
        arg = eval_nd(d.arg, env_g)
        assert isinstance(fun, FunVal)
        return fun.apply(arg)
    raise TypeError(d)


def reflect(n: NfDeriv) -> SemVal:
    """Lift a neutral into a semantic value at its own world."""
    c = n.succedent
    if isinstance(c, Atom):
        return nf_p2nf(nf_ne2p(n))
    def apply(a: SemVal, n=n) -> SemVal:
        return reflect(nf_imp_e(n, reify(a)))
    return FunVal(n.stoup, n.context, c, apply)


def reify(v: SemVal) -> NfDeriv:
    """Extract the normal form denoted by a semantic value."""
    if isinstance(v, NfDeriv):
        return v
    a = v.formula.antecedent
    fresh = sem_pass(reflect(nf_ax(a)))
    return nf_imp_i(reify(v.apply(fresh)))


def sem_pass(v: SemVal) -> SemVal:
    """Move a value's world stoup into the context, like pass."""
    if isinstance(v, NfDeriv):
        assert isinstance(v, NfP2Nf)
        return nf_p2nf(nf_pass(v.body))
    def apply(a: SemVal, v=v) -> SemVal:
        return sem_pass(v.apply(a))
    assert v.stoup is not None
    return FunVal(None, (v.stoup,) + v.context, v.formula, apply)


def identity_env(stoup: Stoup, context: Context) -> Env:
    """The canonical environment interpreting S|Gamma at itself."""
    stoup_val = None if stoup is None else reflect(nf_ax(stoup))
    ctx_vals = tuple(sem_pass(reflect(nf_ax(a))) for a in context)
    return Env(stoup_val, ctx_vals)


def nbe(d: nd.NdDeriv) -> NfDeriv:
    """Normalize by evaluation in the identity environment."""
    env = identity_env(d.stoup, d.context)
    return reify(eval_nd(d, env))


# ---------------------------------------------------------------------------
# direct enumeration of normal forms, used as a counting oracle

def iter_nf(goal: Sequent) -> Iterator[NfDeriv]:
    """All phase-nf derivations of goal, by direct recursion on the rules."""
    c = goal.succedent
    if isinstance(c, Imp):
        sub = Sequent(goal.stoup, goal.context + (c.antecedent,), c.consequent)
        for b in iter_nf(sub):
            yield nf_imp_i(b)
        return
    for b in _iter_p(goal):
        yield nf_p2nf(b)


def _iter_p(goal: Sequent) -> Iterator[NfDeriv]:
    if goal.stoup is None:
        if goal.context:
            sub = Sequent(goal.context[0], goal.context[1:], goal.succedent)
            for b in _iter_p(sub):
                yield nf_pass(b)
        return
    for b in _iter_ne(goal):
        yield nf_ne2p(b)


def _iter_ne(goal: Sequent) -> Iterator[NfDeriv]:
    # A neutral is the stoup variable applied to some prefix of its
    # iterated implication type; enumerate by spine length.
    assert goal.stoup is not None
    args: List[Formula] = []
    rest = goal.stoup
    while True:
        if rest == goal.succedent:
            yield from _iter_spines(goal.stoup, tuple(args), goal.context, goal.succedent)
        if not isinstance(rest, Imp):
            break
        args.append(rest.antecedent)
        rest = rest.consequent


def _iter_spines(head: Formula, args: Tuple[Formula, ...], ctx: Context,
                 succ: Formula) -> Iterator[NfDeriv]:
    if not args:
        if not ctx:
            yield nf_ax(head)
        return
    *front, last = args
    # the final argument consumes a suffix of the context
    for k in range(len(ctx) + 1):
        for fun in _iter_spines(head, tuple(front), ctx[:k],
                                Imp(last, succ)):
            for arg in iter_nf(Sequent(None, ctx[k:], last)):
                yield nf_imp_e(fun, arg)


def count_nf(goal: Sequent) -> int:
    return sum(1 for _ in iter_nf(goal))
