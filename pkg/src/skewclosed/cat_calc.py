"""Categorical calculus: maps between an optional formula and a formula.

Rules (S a stoup, other letters formulas):

    id   :  A => A
    comp :  S => B   and   B => C      gives   S => C
    imp  :  C => A   and   B => D      gives   A -o B => C -o D
    j    :  => A -o A
    i    :  => A                       gives   A -o B => B
    L    :  B -o C => (A -o B) -o (A -o C)

Derivations with an empty stoup are elements, not maps. Terms print
as `id[A]`, `g . f` for comp(f, g), `imp(f,g)`, `j[A]`, `i[A,B](e)`,
`L[A,B,C]`; polymorphic leaves carry their formula annotations so
checking needs no unification. `gen(name)` imports a multigraph
clause as a map T => <Phi>Z in multigraph mode.

Equality of maps is never decided by rewriting here: decide_eq in the
coherence module translates both sides to focused normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .syntax import Formula, Imp, Sequent, Stoup
from .terms import CheckError, Term


@dataclass(frozen=True)
class CatDeriv:
    source: Stoup
    target: Formula

    @property
    def sequent(self) -> Sequent:
        return Sequent(self.source, (), self.target)

    def __str__(self) -> str:
        return print_cat_term(self)


@dataclass(frozen=True)
class CId(CatDeriv):
    pass


@dataclass(frozen=True)
class CComp(CatDeriv):
    first: CatDeriv   # S => B, applied first
    second: CatDeriv  # B => C


@dataclass(frozen=True)
class CImp(CatDeriv):
    contra: CatDeriv  # C => A
    co: CatDeriv      # B => D


@dataclass(frozen=True)
class CJ(CatDeriv):
    pass


@dataclass(frozen=True)
class CI(CatDeriv):
    element: CatDeriv  # => A


@dataclass(frozen=True)
class CL(CatDeriv):
    a: Formula
    b: Formula
    c: Formula


@dataclass(frozen=True)
class CGen(CatDeriv):
    name: str


def c_id(a: Formula) -> CId:
    return CId(a, a)


def c_comp(f: CatDeriv, g: CatDeriv) -> CComp:
    if g.source is None or g.source != f.target:
        raise ValueError(f"comp mismatch: {f.target} then {g.source}")
    return CComp(f.source, g.target, f, g)


def c_imp(f: CatDeriv, g: CatDeriv) -> CImp:
    if f.source is None or g.source is None:
        raise ValueError("imp premises must be maps, not elements")
    return CImp(Imp(f.target, g.source), Imp(f.source, g.target), f, g)


def c_j(a: Formula) -> CJ:
    return CJ(None, Imp(a, a))


def c_i(e: CatDeriv, b: Formula) -> CI:
    if e.source is not None:
        raise ValueError("i takes an element (empty stoup)")
    return CI(Imp(e.target, b), b, e)


def c_l(a: Formula, b: Formula, c: Formula) -> CL:
    return CL(Imp(b, c), Imp(Imp(a, b), Imp(a, c)), a, b, c)


def c_jhat(f: CatDeriv) -> CatDeriv:
    """The derivable map sending f : A => B to (A -o f) . j : => A -o B."""
    if f.source is None:
        raise ValueError("jhat takes a map, not an element")
    return c_comp(c_j(f.source), c_imp(c_id(f.source), f))


def cat_size(d: CatDeriv) -> int:
    if isinstance(d, (CId, CJ, CL, CGen)):
        return 1
    if isinstance(d, CI):
        return 1 + cat_size(d.element)
    if isinstance(d, CComp):
        return 1 + cat_size(d.first) + cat_size(d.second)
    return 1 + cat_size(d.contra) + cat_size(d.co)


# ---------------------------------------------------------------------------
# elaboration and printing

def elaborate_cat(t: Term, path: Tuple[str, ...] = (), graph=None) -> CatDeriv:
    """Build a typed derivation from an annotated term, bottom-up."""
    try:
        if t.tag == "id":
            if len(t.formulas) != 1:
                raise CheckError("id needs one formula annotation, id[A]", path)
            return c_id(t.formulas[0])
        if t.tag == "j":
            if len(t.formulas) != 1:
                raise CheckError("j needs one formula annotation, j[A]", path)
            return c_j(t.formulas[0])
        if t.tag == "L":
            if len(t.formulas) != 3:
                raise CheckError("L needs three formula annotations, L[A,B,C]", path)
            return c_l(*t.formulas)
        if t.tag == "i":
            if len(t.formulas) != 2 or len(t.children) != 1:
                raise CheckError("i needs two formulas and one argument, i[A,B](e)", path)
            e = elaborate_cat(t.children[0], path + ("i.0",), graph)
            if e.target != t.formulas[0]:
                raise CheckError(f"i element has type {e.target}, annotation says {t.formulas[0]}",
                                 path)
            return c_i(e, t.formulas[1])
        if t.tag == "comp":
            f = elaborate_cat(t.children[0], path + ("comp.0",), graph)
            g = elaborate_cat(t.children[1], path + ("comp.1",), graph)
            return c_comp(f, g)
        if t.tag == "imp":
            f = elaborate_cat(t.children[0], path + ("imp.0",), graph)
            g = elaborate_cat(t.children[1], path + ("imp.1",), graph)
            return c_imp(f, g)
        if t.tag == "gen":
            if graph is None:
                raise CheckError("gen(name) needs a multigraph", path)
            clause = graph.clauses.get(t.name)
            if clause is None:
                raise CheckError(f"unknown clause {t.name!r}", path)
            return clause_map(clause)
    except ValueError as exc:
        raise CheckError(str(exc), path) from exc
    raise CheckError(f"unknown categorical rule {t.tag!r}", path)


def clause_map(clause) -> CGen:
    """Import a clause T | Phi |- Z as the map T => <Phi>Z."""
    from .syntax import Atom
    target: Formula = Atom(clause.head)
    for y in reversed(clause.premises):
        target = Imp(Atom(y), target)
    source = None if clause.stoup is None else Atom(clause.stoup)
    return CGen(source, target, clause.name)


def check_cat(t: Term, goal: Sequent, graph=None) -> CatDeriv:
    """Elaborate and match against a categorical sequent S => C."""
    if goal.context:
        raise CheckError(f"categorical sequents have no context: {goal}")
    d = elaborate_cat(t, graph=graph)
    if d.source != goal.stoup or d.target != goal.succedent:
        raise CheckError(f"derivation proves {d.sequent}, wanted {goal}")
    return d


def print_cat_term(d: CatDeriv) -> str:
    if isinstance(d, CId):
        return f"id[{d.source}]"
    if isinstance(d, CJ):
        return f"j[{d.target.antecedent}]"
    if isinstance(d, CL):
        return f"L[{d.a},{d.b},{d.c}]"
    if isinstance(d, CI):
        return f"i[{d.element.target},{d.target}]({print_cat_term(d.element)})"
    if isinstance(d, CImp):
        return f"imp({print_cat_term(d.contra)},{print_cat_term(d.co)})"
    if isinstance(d, CComp):
        first = print_cat_term(d.first)
        if isinstance(d.first, CComp):
            first = f"({first})"
        return f"{print_cat_term(d.second)} . {first}"
    if isinstance(d, CGen):
        return f"gen({d.name})"
    raise TypeError(d)


# ---------------------------------------------------------------------------
# generating equations of the congruence on categorical derivations

@dataclass(frozen=True)
class CatEquation:
    name: str
    lhs: CatDeriv
    rhs: CatDeriv


def eq_left_unit(f: CatDeriv) -> CatEquation:
    return CatEquation("left-unit", c_comp(f, c_id(f.target)), f)


def eq_right_unit(f: CatDeriv) -> CatEquation:
    return CatEquation("right-unit", f, c_comp(c_id(f.source), f))


def eq_assoc(f: CatDeriv, g: CatDeriv, h: CatDeriv) -> CatEquation:
    return CatEquation("assoc", c_comp(f, c_comp(g, h)), c_comp(c_comp(f, g), h))


def eq_imp_id(a: Formula, b: Formula) -> CatEquation:
    return CatEquation("imp-id", c_imp(c_id(a), c_id(b)), c_id(Imp(a, b)))


def eq_imp_comp(h: CatDeriv, f: CatDeriv, g: CatDeriv, k: CatDeriv) -> CatEquation:
    """(f . h) -o (k . g) = (h -o k) . (f -o g), for h;f and g;k composable."""
    lhs = c_imp(c_comp(h, f), c_comp(g, k))
    rhs = c_comp(c_imp(f, g), c_imp(h, k))
    return CatEquation("imp-comp", lhs, rhs)


def eq_nat_j(f: CatDeriv) -> CatEquation:
    """(f -o id) . j = (id -o f) . j for f : A => B."""
    a, b = f.source, f.target
    lhs = c_comp(c_j(b), c_imp(f, c_id(b)))
    rhs = c_comp(c_j(a), c_imp(c_id(a), f))
    return CatEquation("nat-j", lhs, rhs)


def eq_nat_i(e: CatDeriv, h: CatDeriv, g: CatDeriv) -> CatEquation:
    """g . i(e) . (h -o id) = i(h . e) . (id -o g), e : => A, h : A => A'."""
    if h.source != e.target:
        raise ValueError("nat-i needs h with source matching e")
    a1 = h.target
    b, b1 = g.source, g.target
    lhs = c_comp(c_comp(c_imp(h, c_id(b)), c_i(e, b)), g)
    rhs = c_comp(c_imp(c_id(a1), g), c_i(c_comp(e, h), b1))
    return CatEquation("nat-i", lhs, rhs)


def eq_nat_l(f: CatDeriv, g: CatDeriv, h: CatDeriv) -> CatEquation:
    """Naturality of L in all three arguments, for f : A' => A, g : B' => B, h : C => C'."""
    a1, a = f.source, f.target
    b1, b = g.source, g.target
    c, c1 = h.source, h.target
    lhs = c_comp(c_l(a1, b, c), c_imp(c_imp(f, g), c_imp(c_id(a1), h)))
    rhs = c_comp(c_comp(c_imp(g, h), c_l(a, b1, c1)),
                 c_imp(c_id(Imp(a, b1)), c_imp(f, c_id(c1))))
    return CatEquation("nat-L", lhs, rhs)


def eq_c1(e: CatDeriv) -> CatEquation:
    a = e.target
    return CatEquation("c1", c_comp(c_j(a), c_i(e, a)), e)


def eq_c2(a: Formula, c: Formula) -> CatEquation:
    lhs = c_comp(c_l(a, a, c), c_i(c_j(a), Imp(a, c)))
    return CatEquation("c2", lhs, c_id(Imp(a, c)))


def eq_c3(a: Formula, b: Formula) -> CatEquation:
    return CatEquation("c3", c_comp(c_j(b), c_l(a, b, b)), c_j(Imp(a, b)))


def eq_c4(e: CatDeriv, b: Formula, c: Formula) -> CatEquation:
    """(id -o i(e)) . L = i(e) -o id, for e : => A."""
    a = e.target
    lhs = c_comp(c_l(a, b, c), c_imp(c_id(Imp(a, b)), c_i(e, c)))
    rhs = c_imp(c_i(e, b), c_id(c))
    return CatEquation("c4", lhs, rhs)


def eq_c5(a: Formula, b: Formula, c: Formula, d: Formula) -> CatEquation:
    lhs = c_comp(c_l(b, c, d), c_imp(c_id(Imp(b, c)), c_l(a, b, d)))
    big = Imp(Imp(a, b), Imp(a, d))
    rhs = c_comp(c_comp(c_l(a, c, d), c_l(Imp(a, b), Imp(a, c), Imp(a, d))),
                 c_imp(c_l(a, b, c), c_id(big)))
    return CatEquation("c5", lhs, rhs)


EQ_FAMILIES = (
    "left-unit", "right-unit", "assoc", "imp-id", "imp-comp",
    "nat-j", "nat-i", "nat-L", "c1", "c2", "c3", "c4", "c5",
)


def eq_generators(formulas: Tuple[Formula, ...], maps: dict) -> List[CatEquation]:
    """Instantiate all thirteen generator families.

    formulas supplies (A, B, C, D). maps supplies the derivation
    metavariables by role:

        f           any tight map (unit laws, nat-j)
        chain       a composable triple (f1, f2, f3) for associativity
        pair        a quadruple (h, f, g, k) with h;f and g;k composable
        e           an element => A
        h_e         a tight map out of e's formula
        g           any tight map (nat-i)
        trip        any triple of tight maps (nat-L)
    """
    a, b, c, d = formulas
    f1, f2, f3 = maps["chain"]
    ph, pf, pg, pk = maps["pair"]
    nf, ng, nh = maps["trip"]
    return [
        eq_left_unit(maps["f"]),
        eq_right_unit(maps["f"]),
        eq_assoc(f1, f2, f3),
        eq_imp_id(a, b),
        eq_imp_comp(ph, pf, pg, pk),
        eq_nat_j(maps["f"]),
        eq_nat_i(maps["e"], maps["h_e"], maps["g"]),
        eq_nat_l(nf, ng, nh),
        eq_c1(maps["e"]),
        eq_c2(a, c),
        eq_c3(a, b),
        eq_c4(maps["e"], b, c),
        eq_c5(a, b, c, d),
    ]


# ---------------------------------------------------------------------------
# stoup-free combinator presentation
#
# Empty-stoup derivations also have a presentation without the stoup:
# app is application, j the I-combinator, lp the B-combinator, and ip
# replaces the C-combinator in the absence of symmetry:
#
#     app :  => B   and   => B -o C   gives   => C
#     j   :  => A -o A
#     ip  :  => A                     gives   => (A -o B) -o B
#     lp  :  => (B -o C) -o ((A -o B) -o (A -o C))

@dataclass(frozen=True)
class SfDeriv:
    target: Formula

    def __str__(self) -> str:
        return print_sf_term(self)


@dataclass(frozen=True)
class SfJ(SfDeriv):
    pass


@dataclass(frozen=True)
class SfL(SfDeriv):
    a: Formula
    b: Formula
    c: Formula


@dataclass(frozen=True)
class SfI(SfDeriv):
    element: SfDeriv


@dataclass(frozen=True)
class SfApp(SfDeriv):
    arg: SfDeriv  # => B
    fun: SfDeriv  # => B -o C


def sf_j(a: Formula) -> SfJ:
    return SfJ(Imp(a, a))


def sf_l(a: Formula, b: Formula, c: Formula) -> SfL:
    return SfL(Imp(Imp(b, c), Imp(Imp(a, b), Imp(a, c))), a, b, c)


def sf_i(e: SfDeriv, b: Formula) -> SfI:
    return SfI(Imp(Imp(e.target, b), b), e)


def sf_app(arg: SfDeriv, fun: SfDeriv) -> SfApp:
    if not isinstance(fun.target, Imp) or fun.target.antecedent != arg.target:
        raise ValueError(f"cannot apply {fun.target} to {arg.target}")
    return SfApp(fun.target.consequent, arg, fun)


def sf_compose(p: SfDeriv, q: SfDeriv) -> SfDeriv:
    """Composition of elements p : => P -o Q and q : => Q -o R via lp."""
    pt, qt = p.target, q.target
    return sf_app(p, sf_app(q, sf_l(pt.antecedent, pt.consequent, qt.consequent)))


def print_sf_term(d: SfDeriv) -> str:
    if isinstance(d, SfJ):
        return f"j[{d.target.antecedent}]"
    if isinstance(d, SfL):
        return f"lp[{d.a},{d.b},{d.c}]"
    if isinstance(d, SfI):
        return f"ip[{d.element.target},{d.target.consequent}]({print_sf_term(d.element)})"
    if isinstance(d, SfApp):
        return f"app({print_sf_term(d.arg)},{print_sf_term(d.fun)})"
    raise TypeError(d)


def elaborate_sf(t: Term, path: Tuple[str, ...] = ()) -> SfDeriv:
    try:
        if t.tag == "j" and len(t.formulas) == 1:
            return sf_j(t.formulas[0])
        if t.tag == "lp" and len(t.formulas) == 3:
            return sf_l(*t.formulas)
        if t.tag == "ip" and len(t.formulas) == 2 and len(t.children) == 1:
            e = elaborate_sf(t.children[0], path + ("ip.0",))
            if e.target != t.formulas[0]:
                raise CheckError(f"ip element has type {e.target}, annotation says "
                                 f"{t.formulas[0]}", path)
            return sf_i(e, t.formulas[1])
        if t.tag == "app" and len(t.children) == 2:
            return sf_app(elaborate_sf(t.children[0], path + ("app.0",)),
                          elaborate_sf(t.children[1], path + ("app.1",)))
    except ValueError as exc:
        raise CheckError(str(exc), path) from exc
    raise CheckError(f"unknown stoup-free rule {t.tag!r}", path)


def _is_jhat(d: CatDeriv) -> Optional[CatDeriv]:
    """Match comp(j[A], imp(id[A], f)) and return f."""
    if (isinstance(d, CComp) and isinstance(d.first, CJ)
            and isinstance(d.second, CImp) and isinstance(d.second.contra, CId)
            and d.second.contra.source == d.first.target.antecedent):
        return d.second.co
    return None


def to_stoup_free(d: CatDeriv) -> SfDeriv:
    """Translate an empty-stoup derivation to the combinator calculus."""
    if d.source is not None:
        raise ValueError("to_stoup_free takes an empty-stoup derivation; "
                         "route maps through jhat first")
    if isinstance(d, CJ):
        return sf_j(d.target.antecedent)
    jhat_body = _is_jhat(d)
    if jhat_body is not None:
        return _tight_sf(jhat_body)
    if isinstance(d, CComp):
        return sf_app(to_stoup_free(d.first), _tight_sf(d.second))
    raise TypeError(f"empty-stoup derivations are j or comp rooted: {d}")


def _tight_sf(d: CatDeriv) -> SfDeriv:
    """A map A => B as an element => A -o B."""
    if isinstance(d, CId):
        return sf_j(d.source)
    if isinstance(d, CL):
        return sf_l(d.a, d.b, d.c)
    if isinstance(d, CI):
        return sf_i(to_stoup_free(d.element), d.target)
    if isinstance(d, CComp):
        return sf_compose(_tight_sf(d.first), _tight_sf(d.second))
    if isinstance(d, CImp):
        # (f -o g) = postcompose g after precompose f
        f, g = d.contra, d.co
        a, b = d.source.antecedent, d.source.consequent
        c_tgt, d_tgt = d.target.antecedent, d.target.consequent
        pre = sf_compose(sf_l(c_tgt, a, b),
                         sf_i(_tight_sf(f), Imp(c_tgt, b)))
        post = sf_app(_tight_sf(g), sf_l(c_tgt, b, d_tgt))
        return sf_compose(pre, post)
    raise TypeError(f"no combinator translation for {type(d).__name__}")


def from_stoup_free(d: SfDeriv) -> CatDeriv:
    """Back into the categorical calculus, at the empty stoup."""
    if isinstance(d, SfJ):
        return c_j(d.target.antecedent)
    if isinstance(d, SfL):
        return c_jhat(c_l(d.a, d.b, d.c))
    if isinstance(d, SfI):
        e = from_stoup_free(d.element)
        return c_jhat(c_i(e, d.target.consequent))
    if isinstance(d, SfApp):
        fun = from_stoup_free(d.fun)
        arg = from_stoup_free(d.arg)
        return c_comp(fun, c_i(arg, d.target))
    raise TypeError(d)
