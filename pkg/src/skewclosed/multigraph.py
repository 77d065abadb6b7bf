"""Free construction over a skew multigraph of atoms and definite clauses.

The sequent calculus here extends the plain one with two rules: iota
imports a clause (optional-atom stoup, atom context, atom succedent)
and impC is a primitive left rule on an implication in the passive
context. ax and pass remain: with no identities, compositions or
loosening in a bare multigraph, the calculus itself supplies them.

The focused subcalculus keeps all plain focused rules and adds the
packaged clause rule iotaP, which discharges each clause premise with
a loose inversion subgoal and continues focusing on the clause head:

    iotaP[c] :  -|G1 -I-> Y1  ...  -|Gn -I-> Yn   Z|D -F-> C
                =>  T | G1,...,Gn,D -F-> C         (c : T|Y1..Yn -> Z)

Loose clauses make sequents with an empty stoup focusable, so f2p
here also applies to empty stoups; this is what breaks left-normality.

Cut-free limits: a composite of two clauses has no cut-free sequent
derivation in this syntax (it needs iotaP packaging), so the cut
operations raise NotRepresentable when two clause imports meet, and
embedding a focused derivation back into the sequent calculus is
partial in exactly the same way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .syntax import Atom, Context, Formula, Imp, ParseError, Sequent
from .terms import CheckError, Term


class NotRepresentable(ValueError):
    """The requested cut composes clauses, which is not cut-free expressible."""


@dataclass(frozen=True)
class Clause:
    name: str
    stoup: Optional[str]  # an atom name, or None for a loose clause
    premises: Tuple[str, ...]
    head: str

    @property
    def sequent(self) -> Sequent:
        st = None if self.stoup is None else Atom(self.stoup)
        return Sequent(st, tuple(Atom(y) for y in self.premises), Atom(self.head))


@dataclass(frozen=True)
class Multigraph:
    atoms: Tuple[str, ...]
    clauses: Dict[str, Clause] = field(default_factory=dict)

    def __post_init__(self):
        declared = set(self.atoms)
        for c in self.clauses.values():
            used = set(c.premises) | {c.head} | ({c.stoup} if c.stoup else set())
            missing = used - declared
            if missing:
                raise ValueError(f"clause {c.name} uses undeclared atoms {sorted(missing)}")

    def __hash__(self):
        return hash((self.atoms, tuple(self.clauses)))


def parse_multigraph(text: str) -> Multigraph:
    """File format: lines `atom <name>` and `clause <name> : <seq>`."""
    atoms: List[str] = []
    clauses: Dict[str, Clause] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if parts[0] == "atom" and len(parts) == 2 and parts[1].strip().isidentifier():
            atoms.append(parts[1].strip())
            continue
        if parts[0] == "clause" and len(parts) == 2 and ":" in parts[1]:
            name, body = parts[1].split(":", 1)
            name = name.strip()
            if name in clauses:
                raise ValueError(f"duplicate clause name {name!r} on line {lineno}")
            from .syntax import parse_sequent
            seq = parse_sequent(body.strip())
            if not all(isinstance(a, Atom) for a in seq.context) or \
                    not isinstance(seq.succedent, Atom) or \
                    (seq.stoup is not None and not isinstance(seq.stoup, Atom)):
                raise ValueError(f"clause {name!r} must mention atoms only (line {lineno})")
            clauses[name] = Clause(
                name,
                None if seq.stoup is None else seq.stoup.name,
                tuple(a.name for a in seq.context),
                seq.succedent.name,
            )
            continue
        raise ValueError(f"bad multigraph line {lineno}: {raw!r}")
    return Multigraph(tuple(atoms), clauses)


# ---------------------------------------------------------------------------
# sequent calculus derivations

@dataclass(frozen=True)
class MSeqDeriv:
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
        return print_mseq_term(self)


@dataclass(frozen=True)
class MAx(MSeqDeriv):
    pass


@dataclass(frozen=True)
class MPass(MSeqDeriv):
    body: MSeqDeriv


@dataclass(frozen=True)
class MImpR(MSeqDeriv):
    body: MSeqDeriv


@dataclass(frozen=True)
class MImpL(MSeqDeriv):
    arg: MSeqDeriv
    cont: MSeqDeriv

    @property
    def split(self) -> int:
        return len(self.arg.context)


@dataclass(frozen=True)
class MImpC(MSeqDeriv):
    arg: MSeqDeriv   # - | Gamma |- A
    cont: MSeqDeriv  # S | D0, B, D1 |- C
    pos: int         # |D0|

    @property
    def split(self) -> int:
        return len(self.arg.context)


@dataclass(frozen=True)
class MIota(MSeqDeriv):
    clause: Clause


def m_ax(a: Formula) -> MAx:
    return MAx(Sequent(a, (), a))


def m_pass(f: MSeqDeriv) -> MPass:
    if f.stoup is None:
        raise ValueError("pass needs a stoup formula")
    return MPass(Sequent(None, (f.stoup,) + f.context, f.succedent), f)


def m_imp_r(f: MSeqDeriv) -> MImpR:
    if not f.context:
        raise ValueError("impR needs a nonempty context")
    ctx, a = f.context[:-1], f.context[-1]
    return MImpR(Sequent(f.stoup, ctx, Imp(a, f.succedent)), f)


def m_imp_l(f: MSeqDeriv, g: MSeqDeriv) -> MImpL:
    if f.stoup is not None or g.stoup is None:
        raise ValueError("impL premises must be loose then tight")
    seq = Sequent(Imp(f.succedent, g.stoup), f.context + g.context, g.succedent)
    return MImpL(seq, f, g)


def m_imp_c(f: MSeqDeriv, g: MSeqDeriv, pos: int) -> MImpC:
    if f.stoup is not None:
        raise ValueError("impC first premise must have empty stoup")
    if not 0 <= pos < len(g.context):
        raise ValueError(f"impC position {pos} out of range in {g.sequent}")
    b = g.context[pos]
    ctx = g.context[:pos] + (Imp(f.succedent, b),) + f.context + g.context[pos + 1:]
    return MImpC(Sequent(g.stoup, ctx, g.succedent), f, g, pos)


def m_iota(clause: Clause) -> MIota:
    return MIota(clause.sequent, clause)


def print_mseq_term(d: MSeqDeriv) -> str:
    if isinstance(d, MAx):
        return "ax"
    if isinstance(d, MPass):
        return f"pass({print_mseq_term(d.body)})"
    if isinstance(d, MImpR):
        return f"impR({print_mseq_term(d.body)})"
    if isinstance(d, MImpL):
        return f"impL[{d.split}]({print_mseq_term(d.arg)},{print_mseq_term(d.cont)})"
    if isinstance(d, MImpC):
        return f"impC[{d.pos},{d.split}]({print_mseq_term(d.arg)},{print_mseq_term(d.cont)})"
    if isinstance(d, MIota):
        return f"iota({d.clause.name})"
    raise TypeError(d)


def check_mseq(graph: Multigraph, t: Term, goal: Sequent,
               path: Tuple[str, ...] = ()) -> MSeqDeriv:
    if t.tag == "ax":
        if goal.context or goal.stoup != goal.succedent:
            raise CheckError(f"ax does not prove {goal}", path)
        return m_ax(goal.succedent)
    if t.tag == "pass":
        if goal.stoup is not None or not goal.context:
            raise CheckError(f"pass does not apply to {goal}", path)
        body = check_mseq(graph, t.children[0],
                          Sequent(goal.context[0], goal.context[1:], goal.succedent),
                          path + ("pass",))
        return MPass(goal, body)
    if t.tag == "impR":
        if not isinstance(goal.succedent, Imp):
            raise CheckError(f"impR needs an implication succedent in {goal}", path)
        a, b = goal.succedent.antecedent, goal.succedent.consequent
        body = check_mseq(graph, t.children[0],
                          Sequent(goal.stoup, goal.context + (a,), b), path + ("impR",))
        return MImpR(goal, body)
    if t.tag == "impL":
        if not isinstance(goal.stoup, Imp):
            raise CheckError(f"impL needs an implication stoup in {goal}", path)
        k = t.indices[0]
        if not 0 <= k <= len(goal.context):
            raise CheckError(f"split {k} out of range in {goal}", path)
        a, b = goal.stoup.antecedent, goal.stoup.consequent
        f = check_mseq(graph, t.children[0], Sequent(None, goal.context[:k], a),
                       path + (f"impL[{k}].0",))
        g = check_mseq(graph, t.children[1], Sequent(b, goal.context[k:], goal.succedent),
                       path + (f"impL[{k}].1",))
        return MImpL(goal, f, g)
    if t.tag == "impC":
        if len(t.indices) != 2:
            raise CheckError("impC needs position and split, impC[p,k]", path)
        p, k = t.indices
        if not 0 <= p < len(goal.context) or not isinstance(goal.context[p], Imp):
            raise CheckError(f"no implication at position {p} of {goal}", path)
        a, b = goal.context[p].antecedent, goal.context[p].consequent
        if p + 1 + k > len(goal.context):
            raise CheckError(f"split {k} out of range after position {p} in {goal}", path)
        f = check_mseq(graph, t.children[0],
                       Sequent(None, goal.context[p + 1:p + 1 + k], a),
                       path + (f"impC[{p},{k}].0",))
        g = check_mseq(graph, t.children[1],
                       Sequent(goal.stoup,
                               goal.context[:p] + (b,) + goal.context[p + 1 + k:],
                               goal.succedent),
                       path + (f"impC[{p},{k}].1",))
        return MImpC(goal, f, g, p)
    if t.tag == "iota":
        clause = graph.clauses.get(t.name)
        if clause is None:
            raise CheckError(f"unknown clause {t.name!r}", path)
        if clause.sequent != goal:
            raise CheckError(f"clause {t.name} proves {clause.sequent}, wanted {goal}", path)
        return m_iota(clause)
    raise CheckError(f"unknown multigraph sequent rule {t.tag!r}", path)


# ---------------------------------------------------------------------------
# focused derivations

@dataclass(frozen=True)
class MFocDeriv:
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
        return print_mfoc_term(self)


@dataclass(frozen=True)
class MFImpR(MFocDeriv):
    body: MFocDeriv


@dataclass(frozen=True)
class MFP2I(MFocDeriv):
    body: MFocDeriv


@dataclass(frozen=True)
class MFPass(MFocDeriv):
    body: MFocDeriv


@dataclass(frozen=True)
class MFF2P(MFocDeriv):
    # unlike the plain calculus, the stoup may be empty here: loose
    # clauses give derivations that never passivate
    body: MFocDeriv


@dataclass(frozen=True)
class MFAx(MFocDeriv):
    pass


@dataclass(frozen=True)
class MFImpL(MFocDeriv):
    arg: MFocDeriv
    cont: MFocDeriv

    @property
    def split(self) -> int:
        return len(self.arg.context)


@dataclass(frozen=True)
class MFIotaP(MFocDeriv):
    clause: Clause
    args: Tuple[MFocDeriv, ...]  # - | Gi -I-> Yi
    cont: MFocDeriv              # Z | D -F-> C


MPHASE_I, MPHASE_P, MPHASE_F = "I", "P", "F"

_MPHASES = {MFImpR: MPHASE_I, MFP2I: MPHASE_I, MFPass: MPHASE_P, MFF2P: MPHASE_P,
            MFAx: MPHASE_F, MFImpL: MPHASE_F, MFIotaP: MPHASE_F}


def m_phase(d: MFocDeriv) -> str:
    return _MPHASES[type(d)]


def mf_imp_r(f: MFocDeriv) -> MFImpR:
    if m_phase(f) != MPHASE_I or not f.context:
        raise ValueError("impR needs a phase-I premise with nonempty context")
    ctx, a = f.context[:-1], f.context[-1]
    return MFImpR(Sequent(f.stoup, ctx, Imp(a, f.succedent)), f)


def mf_p2i(f: MFocDeriv) -> MFP2I:
    if m_phase(f) != MPHASE_P or not isinstance(f.succedent, Atom):
        raise ValueError("p2i needs a phase-P premise with atomic succedent")
    return MFP2I(f.sequent, f)


def mf_pass(f: MFocDeriv) -> MFPass:
    if m_phase(f) != MPHASE_P or f.stoup is None:
        raise ValueError("pass needs a phase-P premise with a stoup")
    return MFPass(Sequent(None, (f.stoup,) + f.context, f.succedent), f)


def mf_f2p(f: MFocDeriv) -> MFF2P:
    if m_phase(f) != MPHASE_F:
        raise ValueError("f2p needs a phase-F premise")
    return MFF2P(f.sequent, f)


def mf_ax(x: Formula) -> MFAx:
    if not isinstance(x, Atom):
        raise ValueError("focused ax is restricted to atoms")
    return MFAx(Sequent(x, (), x))


def mf_imp_l(f: MFocDeriv, g: MFocDeriv) -> MFImpL:
    if m_phase(f) != MPHASE_I or f.stoup is not None:
        raise ValueError("impL argument premise must be phase I with empty stoup")
    if m_phase(g) != MPHASE_F or g.stoup is None:
        raise ValueError("impL continuation premise must be phase F with a stoup")
    seq = Sequent(Imp(f.succedent, g.stoup), f.context + g.context, g.succedent)
    return MFImpL(seq, f, g)


def mf_iota_p(clause: Clause, args: Sequence[MFocDeriv], cont: MFocDeriv) -> MFIotaP:
    if len(args) != len(clause.premises):
        raise ValueError(f"clause {clause.name} needs {len(clause.premises)} premises")
    ctx: Context = ()
    for arg, y in zip(args, clause.premises):
        if m_phase(arg) != MPHASE_I or arg.stoup is not None or arg.succedent != Atom(y):
            raise ValueError(f"bad premise for {y} of clause {clause.name}")
        ctx += arg.context
    if m_phase(cont) != MPHASE_F or cont.stoup != Atom(clause.head):
        raise ValueError(f"bad continuation for clause {clause.name}")
    stoup = None if clause.stoup is None else Atom(clause.stoup)
    seq = Sequent(stoup, ctx + cont.context, cont.succedent)
    return MFIotaP(seq, clause, tuple(args), cont)


def print_mfoc_term(d: MFocDeriv) -> str:
    if isinstance(d, MFImpR):
        return f"impR({print_mfoc_term(d.body)})"
    if isinstance(d, MFP2I):
        return f"p2i({print_mfoc_term(d.body)})"
    if isinstance(d, MFPass):
        return f"pass({print_mfoc_term(d.body)})"
    if isinstance(d, MFF2P):
        return f"f2p({print_mfoc_term(d.body)})"
    if isinstance(d, MFAx):
        return "ax"
    if isinstance(d, MFImpL):
        return f"impL[{d.split}]({print_mfoc_term(d.arg)},{print_mfoc_term(d.cont)})"
    if isinstance(d, MFIotaP):
        cuts = []
        total = 0
        for arg in d.args:
            total += len(arg.context)
            cuts.append(str(total))
        bracket = ",".join([d.clause.name] + cuts)
        inner = ", ".join(print_mfoc_term(a) for a in d.args)
        cont = print_mfoc_term(d.cont)
        if inner:
            return f"iotaP[{bracket}]({inner}; {cont})"
        return f"iotaP[{bracket}]({cont})"
    raise TypeError(d)


def check_mfoc(graph: Multigraph, t: Term, goal: Sequent, phase: str = MPHASE_I,
               path: Tuple[str, ...] = ()) -> MFocDeriv:
    if phase == MPHASE_I:
        if t.tag == "impR":
            if not isinstance(goal.succedent, Imp):
                raise CheckError(f"impR needs an implication succedent in {goal}", path)
            a, b = goal.succedent.antecedent, goal.succedent.consequent
            body = check_mfoc(graph, t.children[0],
                              Sequent(goal.stoup, goal.context + (a,), b),
                              MPHASE_I, path + ("impR",))
            return MFImpR(goal, body)
        if t.tag == "p2i":
            if not isinstance(goal.succedent, Atom):
                raise CheckError(f"p2i needs an atomic succedent in {goal}", path)
            return MFP2I(goal, check_mfoc(graph, t.children[0], goal, MPHASE_P,
                                          path + ("p2i",)))
        raise CheckError(f"rule {t.tag!r} is not a phase-I rule", path)
    if phase == MPHASE_P:
        if t.tag == "pass":
            if goal.stoup is not None or not goal.context:
                raise CheckError(f"pass does not apply to {goal}", path)
            sub = Sequent(goal.context[0], goal.context[1:], goal.succedent)
            return MFPass(goal, check_mfoc(graph, t.children[0], sub, MPHASE_P,
                                           path + ("pass",)))
        if t.tag == "f2p":
            return MFF2P(goal, check_mfoc(graph, t.children[0], goal, MPHASE_F,
                                          path + ("f2p",)))
        raise CheckError(f"rule {t.tag!r} is not a phase-P rule", path)
    if phase == MPHASE_F:
        if t.tag == "ax":
            if (not isinstance(goal.succedent, Atom) or goal.context
                    or goal.stoup != goal.succedent):
                raise CheckError(f"focused ax does not prove {goal}", path)
            return mf_ax(goal.succedent)
        if t.tag == "impL":
            if not isinstance(goal.stoup, Imp):
                raise CheckError(f"impL needs an implication stoup in {goal}", path)
            k = t.indices[0]
            if not 0 <= k <= len(goal.context):
                raise CheckError(f"split {k} out of range in {goal}", path)
            a, b = goal.stoup.antecedent, goal.stoup.consequent
            f = check_mfoc(graph, t.children[0], Sequent(None, goal.context[:k], a),
                           MPHASE_I, path + (f"impL[{k}].0",))
            g = check_mfoc(graph, t.children[1], Sequent(b, goal.context[k:], goal.succedent),
                           MPHASE_F, path + (f"impL[{k}].1",))
            return MFImpL(goal, f, g)
        if t.tag == "iotaP":
            clause = graph.clauses.get(t.name)
            if clause is None:
                raise CheckError(f"unknown clause {t.name!r}", path)
            n = len(clause.premises)
            if len(t.indices) != n or len(t.children) != n or len(t.extra) != 1:
                raise CheckError(
                    f"iotaP[{clause.name}] needs {n} cut points, {n} premises and "
                    "a continuation after ';'", path)
            want_stoup = None if clause.stoup is None else Atom(clause.stoup)
            if goal.stoup != want_stoup:
                raise CheckError(f"clause {clause.name} needs stoup "
                                 f"{clause.stoup or '-'} in {goal}", path)
            cuts = [0] + list(t.indices)
            if any(a > b for a, b in zip(cuts, cuts[1:])) or cuts[-1] > len(goal.context):
                raise CheckError(f"bad iotaP cut points {t.indices} in {goal}", path)
            args = []
            for i, y in enumerate(clause.premises):
                sub = Sequent(None, goal.context[cuts[i]:cuts[i + 1]], Atom(y))
                args.append(check_mfoc(graph, t.children[i], sub, MPHASE_I,
                                       path + (f"iotaP.{i}",)))
            cont_goal = Sequent(Atom(clause.head), goal.context[cuts[-1]:], goal.succedent)
            cont = check_mfoc(graph, t.extra[0], cont_goal, MPHASE_F, path + ("iotaP.cont",))
            return MFIotaP(goal, clause, tuple(args), cont)
        raise CheckError(f"rule {t.tag!r} is not a phase-F rule", path)
    raise CheckError(f"unknown phase {phase!r}", path)


def infer_mfoc_root_phase(t: Term) -> str:
    return {"impR": MPHASE_I, "p2i": MPHASE_I, "pass": MPHASE_P, "f2p": MPHASE_P,
            "ax": MPHASE_F, "impL": MPHASE_F, "iotaP": MPHASE_F}.get(t.tag, MPHASE_I)


def is_mseq_term(t: Term) -> bool:
    tags = {"ax", "pass", "impR", "impL", "impC", "iota"}
    return t.tag in tags and all(is_mseq_term(c) for c in t.children) and not t.extra


def m_check(graph: Multigraph, t: Term, goal: Sequent):
    """Check a term in whichever multigraph calculus its tags belong to."""
    if any(tag in _collect_tags(t) for tag in ("p2i", "f2p", "iotaP")):
        return check_mfoc(graph, t, goal, infer_mfoc_root_phase(t))
    return check_mseq(graph, t, goal)


def _collect_tags(t: Term):
    yield t.tag
    for c in t.children + t.extra:
        yield from _collect_tags(c)


# ---------------------------------------------------------------------------
# focusing: admissible rules and the normalizer

def m_pass_I(f: MFocDeriv) -> MFocDeriv:
    if isinstance(f, MFImpR):
        return mf_imp_r(m_pass_I(f.body))
    if isinstance(f, MFP2I):
        return mf_p2i(mf_pass(f.body))
    raise TypeError(f"m_pass_I needs a phase-I derivation: {f}")


def m_imp_l_I(f: MFocDeriv, g: MFocDeriv) -> MFocDeriv:
    if isinstance(g, MFImpR):
        return mf_imp_r(m_imp_l_I(f, g.body))
    if isinstance(g, MFP2I) and isinstance(g.body, MFF2P):
        return mf_p2i(mf_f2p(mf_imp_l(f, g.body.body)))
    raise TypeError(f"m_imp_l_I needs a phase-I continuation with a stoup: {g}")


def m_ax_I(a: Formula) -> MFocDeriv:
    if isinstance(a, Atom):
        return mf_p2i(mf_f2p(mf_ax(a)))
    return mf_imp_r(m_imp_l_I(m_pass_I(m_ax_I(a.antecedent)), m_ax_I(a.consequent)))


def m_imp_c_I(e: MFocDeriv, g: MFocDeriv, pos: int) -> MFocDeriv:
    """impC admissible in phase I: route the new implication into the
    stoup (after pass) or into whichever subgoal owns the position."""
    if isinstance(g, MFImpR):
        return mf_imp_r(m_imp_c_I(e, g.body, pos))
    if isinstance(g, MFP2I):
        return mf_p2i(_m_imp_c_P(e, g.body, pos))
    raise TypeError(g)


def _m_imp_c_P(e: MFocDeriv, g: MFocDeriv, pos: int) -> MFocDeriv:
    if isinstance(g, MFPass):
        if pos == 0:
            body = g.body
            if not isinstance(body, MFF2P):
                raise AssertionError("tight phase-P derivation must be f2p")
            return mf_pass(mf_f2p(mf_imp_l(e, body.body)))
        return mf_pass(_m_imp_c_P(e, g.body, pos - 1))
    if isinstance(g, MFF2P):
        return mf_f2p(_m_imp_c_F(e, g.body, pos))
    raise TypeError(g)


def _m_imp_c_F(e: MFocDeriv, g: MFocDeriv, pos: int) -> MFocDeriv:
    if isinstance(g, MFImpL):
        k = g.split
        if pos < k:
            return mf_imp_l(m_imp_c_I(e, g.arg, pos), g.cont)
        return mf_imp_l(g.arg, _m_imp_c_F(e, g.cont, pos - k))
    if isinstance(g, MFIotaP):
        offset = 0
        new_args = list(g.args)
        for i, arg in enumerate(g.args):
            width = len(arg.context)
            if pos < offset + width:
                new_args[i] = m_imp_c_I(e, arg, pos - offset)
                return mf_iota_p(g.clause, new_args, g.cont)
            offset += width
        return mf_iota_p(g.clause, g.args, _m_imp_c_F(e, g.cont, pos - offset))
    raise AssertionError("unreachable: ax has no context positions")


def m_focus(d: MSeqDeriv) -> MFocDeriv:
    """Focusing normalizer for the multigraph sequent calculus."""
    if isinstance(d, MAx):
        return m_ax_I(d.succedent)
    if isinstance(d, MPass):
        return m_pass_I(m_focus(d.body))
    if isinstance(d, MImpR):
        return mf_imp_r(m_focus(d.body))
    if isinstance(d, MImpL):
        return m_imp_l_I(m_focus(d.arg), m_focus(d.cont))
    if isinstance(d, MImpC):
        return m_imp_c_I(m_focus(d.arg), m_focus(d.cont), d.pos)
    if isinstance(d, MIota):
        clause = d.clause
        args = [mf_p2i(mf_pass(mf_f2p(mf_ax(Atom(y))))) for y in clause.premises]
        packaged = mf_iota_p(clause, args, mf_ax(Atom(clause.head)))
        return mf_p2i(mf_f2p(packaged))
    raise TypeError(d)


# ---------------------------------------------------------------------------
# enumeration

def m_iter_focused(graph: Multigraph, s: Sequent) -> Iterator[MFocDeriv]:
    """All phase-I focused derivations over the graph, rule order fixed.

    Cyclic clause sets have infinite homsets; this generator then never
    finishes, so callers stream with a cap.
    """
    c = s.succedent
    if isinstance(c, Imp):
        sub = Sequent(s.stoup, s.context + (c.antecedent,), c.consequent)
        for b in m_iter_focused(graph, sub):
            yield mf_imp_r(b)
        return
    for b in _m_iter_p(graph, s):
        yield mf_p2i(b)


def _m_iter_p(graph: Multigraph, s: Sequent) -> Iterator[MFocDeriv]:
    if s.stoup is None:
        if s.context:
            sub = Sequent(s.context[0], s.context[1:], s.succedent)
            for b in _m_iter_p(graph, sub):
                yield mf_pass(b)
        # loose clauses focus without passivating
        for b in _m_iter_f(graph, s):
            yield mf_f2p(b)
        return
    for b in _m_iter_f(graph, s):
        yield mf_f2p(b)


def _m_iter_f(graph: Multigraph, s: Sequent) -> Iterator[MFocDeriv]:
    stoup = s.stoup
    if isinstance(stoup, Atom) and stoup == s.succedent and not s.context:
        yield mf_ax(stoup)
    if isinstance(stoup, Imp):
        a, b = stoup.antecedent, stoup.consequent
        for k in range(len(s.context) + 1):
            args = list(m_iter_focused(graph, Sequent(None, s.context[:k], a)))
            if not args:
                continue
            for cont in _m_iter_f(graph, Sequent(b, s.context[k:], s.succedent)):
                for arg in args:
                    yield mf_imp_l(arg, cont)
    stoup_name = None if stoup is None else (stoup.name if isinstance(stoup, Atom) else False)
    if stoup_name is False:
        return
    for clause in graph.clauses.values():
        if clause.stoup != stoup_name:
            continue
        n = len(clause.premises)
        for cuts in _cut_points(len(s.context), n):
            bounds = [0] + list(cuts)
            cont_goal = Sequent(Atom(clause.head), s.context[bounds[-1]:], s.succedent)
            # continuation first: loose-clause premise subgoals can
            # repeat the conclusion sequent, so they are only explored
            # once the continuation is known to be inhabited
            arg_lists = None
            for cont in _m_iter_f(graph, cont_goal):
                if arg_lists is None:
                    arg_lists = []
                    for i, y in enumerate(clause.premises):
                        sub = Sequent(None, s.context[bounds[i]:bounds[i + 1]], Atom(y))
                        found = list(m_iter_focused(graph, sub))
                        if not found:
                            arg_lists = []
                            break
                        arg_lists.append(found)
                    if len(arg_lists) != n:
                        break
                for combo in _product(arg_lists):
                    yield mf_iota_p(clause, combo, cont)


def _cut_points(total: int, n: int) -> Iterator[Tuple[int, ...]]:
    """Nondecreasing cut points 0 <= k1 <= ... <= kn <= total, short-first."""
    if n == 0:
        yield ()
        return
    def go(prev, left):
        if left == 0:
            yield ()
            return
        for k in range(prev, total + 1):
            for rest in go(k, left - 1):
                yield (k,) + rest
    yield from go(0, n)


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for rest in _product(lists[1:]):
            yield (head,) + rest


def m_enumerate(graph: Multigraph, s: Sequent, cap: Optional[int] = 10 ** 6) -> List[MFocDeriv]:
    from .coherence import ResourceCapError
    out = []
    for d in m_iter_focused(graph, s):
        out.append(d)
        if cap is not None and len(out) > cap:
            raise ResourceCapError(f"more than {cap} derivations of {s}")
    return out


def m_count(graph: Multigraph, s: Sequent, cap: Optional[int] = None) -> int:
    from .coherence import ResourceCapError
    n = 0
    for _ in m_iter_focused(graph, s):
        n += 1
        if cap is not None and n > cap:
            raise ResourceCapError(f"more than {cap} derivations of {s}")
    return n


# ---------------------------------------------------------------------------
# admissible cuts on sequent derivations
#
# All three cuts are defined by mutual structural recursion with impC
# threading clause premises. A cut whose both sides reduce to clause
# imports would denote a genuine composite multimap, which this
# cut-free syntax cannot express: those cases raise NotRepresentable.

def m_scut(f: MSeqDeriv, g: MSeqDeriv) -> MSeqDeriv:
    if g.stoup != f.succedent:
        raise ValueError(f"m_scut mismatch: {f.sequent} vs {g.sequent}")
    if isinstance(f, MAx):
        return g
    if isinstance(f, MPass):
        return m_pass(m_scut(f.body, g))
    if isinstance(f, MImpL):
        return m_imp_l(f.arg, m_scut(f.cont, g))
    if isinstance(f, MImpC):
        return m_imp_c(f.arg, m_scut(f.cont, g), f.pos)
    # f is impR-rooted or a clause import: recurse on g
    if isinstance(g, MAx):
        return f
    if isinstance(g, MImpR):
        return m_imp_r(m_scut(f, g.body))
    if isinstance(g, MImpC):
        return m_imp_c(g.arg, m_scut(f, g.cont), g.pos + len(f.context))
    if isinstance(f, MImpR) and isinstance(g, MImpL):
        return m_scut(m_ccut(g.arg, f.body, len(f.body.context) - 1), g.cont)
    if isinstance(f, MIota) and isinstance(g, MIota):
        raise NotRepresentable(
            f"composite of clauses {f.clause.name} and {g.clause.name} "
            "has no cut-free derivation")
    raise AssertionError(f"unreachable m_scut case: {type(f).__name__}/{type(g).__name__}")


def m_ccut(e: MSeqDeriv, g: MSeqDeriv, pos: int) -> MSeqDeriv:
    if e.stoup is not None:
        raise ValueError("m_ccut left premise must have empty stoup")
    if not 0 <= pos < len(g.context) or g.context[pos] != e.succedent:
        raise ValueError(f"m_ccut: no {e.succedent} at position {pos} of {g.sequent}")
    if isinstance(g, MPass):
        if pos == 0:
            return m_scut(e, g.body)
        return m_pass(m_ccut(e, g.body, pos - 1))
    if isinstance(g, MImpR):
        return m_imp_r(m_ccut(e, g.body, pos))
    if isinstance(g, MImpL):
        k = g.split
        if pos < k:
            return m_imp_l(m_ccut(e, g.arg, pos), g.cont)
        return m_imp_l(g.arg, m_ccut(e, g.cont, pos - k))
    if isinstance(g, MImpC):
        p, width = g.pos, g.split
        if pos < p:
            return m_imp_c(g.arg, m_ccut(e, g.cont, pos), p - 1 + len(e.context))
        if pos == p:
            # the cut formula is the impC-introduced implication: apply
            # e to the argument premise, then cut the result deeper
            return m_ccut(_m_apply(e, g.arg), g.cont, p)
        if pos <= p + width:
            return m_imp_c(m_ccut(e, g.arg, pos - p - 1), g.cont, p)
        return m_imp_c(g.arg, m_ccut(e, g.cont, pos - width), p)
    if isinstance(g, MIota):
        # thread e into a clause premise
        if isinstance(e, MPass):
            return m_ccut_fma(e.body, g, pos)
        if isinstance(e, MImpC):
            return m_imp_c(e.arg, m_ccut(e.cont, g, pos), pos + e.pos)
        if isinstance(e, MIota):
            raise NotRepresentable(
                f"composite of clauses {e.clause.name} and {g.clause.name} "
                "has no cut-free derivation")
        raise AssertionError("unreachable loose cut into a clause premise")
    raise AssertionError(f"unreachable m_ccut case: {type(g).__name__}")


def m_ccut_fma(e: MSeqDeriv, g: MSeqDeriv, pos: int) -> MSeqDeriv:
    """Cut a tight derivation into a context position."""
    if e.stoup is None:
        raise ValueError("m_ccut_fma left premise must have a stoup")
    if not isinstance(g, MIota):
        return m_ccut(m_pass(e), g, pos)
    # threading through a clause premise: peel e down to ax or get stuck
    if isinstance(e, MAx):
        return g
    if isinstance(e, MImpL):
        return m_imp_c(e.arg, m_ccut_fma(e.cont, g, pos), pos)
    if isinstance(e, MImpC):
        return m_imp_c(e.arg, m_ccut_fma(e.cont, g, pos), pos + 1 + e.pos)
    if isinstance(e, MIota):
        raise NotRepresentable(
            f"composite of clauses {e.clause.name} and {g.clause.name} "
            "has no cut-free derivation")
    raise AssertionError("impR cannot prove the atomic clause premise")


def _m_apply(e: MSeqDeriv, arg: MSeqDeriv) -> MSeqDeriv:
    """Apply a loose derivation of A -o B to a loose argument of A."""
    if isinstance(e, MImpR):
        return m_ccut(arg, e.body, len(e.body.context) - 1)
    if isinstance(e, MPass):
        return m_pass(_m_apply_tight(e.body, arg))
    if isinstance(e, MImpC):
        return m_imp_c(e.arg, _m_apply(e.cont, arg), e.pos)
    raise AssertionError("loose implications are impR, pass or impC rooted")


def _m_apply_tight(q: MSeqDeriv, arg: MSeqDeriv) -> MSeqDeriv:
    if isinstance(q, MAx):
        return m_imp_l(arg, m_ax(q.succedent.consequent))
    if isinstance(q, MImpR):
        return m_ccut(arg, q.body, len(q.body.context) - 1)
    if isinstance(q, MImpL):
        return m_imp_l(q.arg, _m_apply_tight(q.cont, arg))
    if isinstance(q, MImpC):
        return m_imp_c(q.arg, _m_apply_tight(q.cont, arg), q.pos)
    raise AssertionError("clause imports have atomic succedents")


# ---------------------------------------------------------------------------
# the failed activation rule

@dataclass(frozen=True)
class ActStuck:
    """Witness that act is not admissible: a clause import with a loose
    stoup cannot move its first context formula into the stoup."""
    clause: Clause
    at: Sequent


def m_act_attempt(d: MSeqDeriv) -> Union[MSeqDeriv, ActStuck]:
    if d.stoup is not None or not d.context:
        raise ValueError("act needs an empty stoup and a nonempty context")
    if isinstance(d, MPass):
        return d.body
    if isinstance(d, MImpR):
        inner = m_act_attempt(d.body)
        if isinstance(inner, ActStuck):
            return inner
        return m_imp_r(inner)
    if isinstance(d, MImpC):
        if d.pos == 0:
            inner = m_act_attempt(d.cont)
            if isinstance(inner, ActStuck):
                return inner
            return m_imp_l(d.arg, inner)
        inner = m_act_attempt(d.cont)
        if isinstance(inner, ActStuck):
            return inner
        return m_imp_c(d.arg, inner, d.pos - 1)
    if isinstance(d, MIota):
        return ActStuck(d.clause, d.sequent)
    raise AssertionError("ax and impL need a stoup")


# ---------------------------------------------------------------------------
# embedding focused derivations back (partial: clause composites are
# not representable)

def m_emb(d: MFocDeriv) -> MSeqDeriv:
    ph = m_phase(d)
    if ph == MPHASE_I:
        return m_emb_I(d)
    if ph == MPHASE_P:
        return m_emb_P(d)
    return m_emb_F(d)


def m_emb_I(d: MFocDeriv) -> MSeqDeriv:
    if isinstance(d, MFImpR):
        return m_imp_r(m_emb_I(d.body))
    if isinstance(d, MFP2I):
        return m_emb_P(d.body)
    raise TypeError(d)


def m_emb_P(d: MFocDeriv) -> MSeqDeriv:
    if isinstance(d, MFPass):
        return m_pass(m_emb_P(d.body))
    if isinstance(d, MFF2P):
        return m_emb_F(d.body)
    raise TypeError(d)


def _is_identity_premise(arg: MFocDeriv, y: str) -> bool:
    return arg.sequent == Sequent(None, (Atom(y),), Atom(y)) and \
        isinstance(arg, MFP2I) and isinstance(arg.body, MFPass)


def m_emb_F(d: MFocDeriv) -> MSeqDeriv:
    if isinstance(d, MFAx):
        return m_ax(d.succedent)
    if isinstance(d, MFImpL):
        return m_imp_l(m_emb_I(d.arg), m_emb_F(d.cont))
    if isinstance(d, MFIotaP):
        out: MSeqDeriv = m_iota(d.clause)
        for i in reversed(range(len(d.args))):
            arg = d.args[i]
            if _is_identity_premise(arg, d.clause.premises[i]):
                continue
            out = m_ccut(m_emb_I(arg), out, i)
        if not isinstance(d.cont, MFAx):
            out = m_scut(out, m_emb_F(d.cont))
        return out
    raise TypeError(d)


# ---------------------------------------------------------------------------
# the seven impC commutative conversion families

@dataclass(frozen=True)
class MSeqEquation:
    name: str
    lhs: MSeqDeriv
    rhs: MSeqDeriv


def impc_impr_eq(f: MSeqDeriv, g: MSeqDeriv, pos: int) -> MSeqEquation:
    """impC(f, impR g) = impR(impC(f, g)); pos names a context formula
    of g other than the one impR abstracts."""
    return MSeqEquation("impc-impr", m_imp_c(f, m_imp_r(g), pos),
                        m_imp_r(m_imp_c(f, g, pos)))


def pass_impc_eq(f: MSeqDeriv, g: MSeqDeriv, pos: int) -> MSeqEquation:
    return MSeqEquation("pass-impc", m_pass(m_imp_c(f, g, pos)),
                        m_imp_c(f, m_pass(g), pos + 1))


def pass_impl_eq(f: MSeqDeriv, g: MSeqDeriv) -> MSeqEquation:
    return MSeqEquation("pass-impl", m_pass(m_imp_l(f, g)),
                        m_imp_c(f, m_pass(g), 0))


def impc_impl_right_eq(f: MSeqDeriv, g: MSeqDeriv, h: MSeqDeriv, pos: int) -> MSeqEquation:
    """Both sides put f's implication inside the impL continuation at pos."""
    lhs = m_imp_c(f, m_imp_l(g, h), len(g.context) + pos)
    rhs = m_imp_l(g, m_imp_c(f, h, pos))
    return MSeqEquation("impc-impl-right", lhs, rhs)


def impc_impl_left_eq(f: MSeqDeriv, g: MSeqDeriv, h: MSeqDeriv, pos: int) -> MSeqEquation:
    """Both sides put f's implication inside the impL argument at pos."""
    lhs = m_imp_c(f, m_imp_l(g, h), pos)
    rhs = m_imp_l(m_imp_c(f, g, pos), h)
    return MSeqEquation("impc-impl-left", lhs, rhs)


def impc_exchange_eq(f: MSeqDeriv, g: MSeqDeriv, h: MSeqDeriv,
                     pos_f: int, pos_g: int) -> MSeqEquation:
    """Two impC cuts at independent positions commute; pos_f < pos_g
    name positions in h's context."""
    lhs = m_imp_c(f, m_imp_c(g, h, pos_g), pos_f)
    rhs = m_imp_c(g, m_imp_c(f, h, pos_f), pos_g + len(f.context))
    return MSeqEquation("impc-exchange", lhs, rhs)


def impc_nested_eq(f: MSeqDeriv, g: MSeqDeriv, h: MSeqDeriv,
                   pos_f: int, pos_g: int) -> MSeqEquation:
    """impC into the argument premise of another impC; pos_f names a
    context formula of g, pos_g one of h."""
    lhs = m_imp_c(f, m_imp_c(g, h, pos_g), pos_g + 1 + pos_f)
    rhs = m_imp_c(m_imp_c(f, g, pos_f), h, pos_g)
    return MSeqEquation("impc-nested", lhs, rhs)


M_EQ_FAMILIES = (
    "impc-impr", "pass-impc", "pass-impl", "impc-impl-right",
    "impc-impl-left", "impc-exchange", "impc-nested",
)
