"""Batch command line interface.

Exit codes: 0 success, 1 parse or type errors, 2 the eq command found
the maps distinct, 3 a resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bridge, cat_calc as ct, coherence, focused as fc, model as md
from . import multigraph as mg, nat_ded as nd, normal_nd as nf, seq_calc as sq
from .syntax import ParseError, Sequent, parse_formula, parse_sequent
from .terms import CheckError, parse_term


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")


def _load_graph(path):
    if path is None:
        return None
    try:
        return mg.parse_multigraph(_read(path))
    except (ValueError, ParseError) as exc:
        raise CliError(f"bad multigraph file: {exc}")


def _parse_goal(text: str) -> Sequent:
    try:
        return parse_sequent(text)
    except ParseError as exc:
        raise CliError(f"bad sequent: {exc}")


def _parse_term_file(path: str):
    try:
        return parse_term(_read(path).strip())
    except ParseError as exc:
        raise CliError(f"bad term in {path}: {exc}")


def _check_in(calculus: str, term, goal: Sequent, graph):
    try:
        if calculus == "cat":
            return ct.check_cat(term, goal, graph=graph)
        if calculus == "sf":
            d = ct.elaborate_sf(term)
            if goal.stoup is not None or goal.context or d.target != goal.succedent:
                raise CheckError(f"derivation proves => {d.target}, wanted {goal}")
            return d
        if calculus == "seq":
            return sq.check_seq(term, goal)
        if calculus == "nd":
            return nd.check_nd(term, goal)
        if calculus == "foc":
            return fc.check_foc(term, goal, fc.infer_root_phase(term))
        if calculus == "nf":
            return nf.check_nf(term, goal, nf.infer_nf_root_phase(term))
        if calculus in ("mseq", "mfoc"):
            if graph is None:
                raise CliError(f"calculus {calculus} needs --graph")
            if calculus == "mseq":
                return mg.check_mseq(graph, term, goal)
            return mg.check_mfoc(graph, term, goal, mg.infer_mfoc_root_phase(term))
    except CheckError as exc:
        raise CliError(f"type error: {exc}")
    raise CliError(f"unknown calculus {calculus!r}")


def cmd_check(args) -> int:
    graph = _load_graph(args.graph)
    term = _parse_term_file(args.term_file)
    goal = _parse_goal(args.sequent)
    _check_in(args.calculus, term, goal, graph)
    print("ok")
    return 0


def cmd_normalize(args) -> int:
    goal = _parse_goal(args.sequent)
    term = _parse_term_file(args.term_file)
    try:
        if args.via == "focus":
            d = sq.check_seq(term, goal)
            print(fc.focus(d))
        elif args.via == "hered":
            d = nd.check_nd(term, goal)
            print(fc.hered(d))
        else:
            d = nd.check_nd(term, goal)
            print(nf.nbe(d))
    except CheckError as exc:
        raise CliError(f"type error: {exc}")
    return 0


_TRANSLATIONS = {
    ("seq", "cat"): lambda d, args: bridge.sound(d),
    ("seq", "foc"): lambda d, args: fc.focus(d),
    ("seq", "seq"): lambda d, args: sq.act(d),
    ("cat", "seq"): lambda d, args: bridge.cmplt(d, _ctx(args)),
    ("cat", "sf"): lambda d, args: ct.to_stoup_free(d),
    ("sf", "cat"): lambda d, args: ct.from_stoup_free(d),
    ("foc", "seq"): lambda d, args: fc.emb_I(d),
    ("foc", "nd"): lambda d, args: fc.emb_nd_I(d),
    ("foc", "nf"): lambda d, args: bridge.I2nf(d),
    ("nf", "foc"): lambda d, args: bridge.nf2I(d),
    ("nf", "nd"): lambda d, args: nf.emb_nf(d),
    ("nd", "foc"): lambda d, args: fc.hered(d),
    ("nd", "nf"): lambda d, args: nf.nbe(d),
}


def _ctx(args):
    if not getattr(args, "context", None):
        return ()
    return tuple(parse_formula(p.strip()) for p in args.context.split(",") if p.strip())


def cmd_translate(args) -> int:
    pair = (args.src, args.dst)
    fn = _TRANSLATIONS.get(pair)
    if fn is None:
        raise CliError(f"no translation from {args.src} to {args.dst}")
    graph = _load_graph(args.graph)
    term = _parse_term_file(args.term_file)
    goal = _parse_goal(args.sequent)
    d = _check_in(args.src, term, goal, graph)
    try:
        print(fn(d, args))
    except (ValueError, TypeError) as exc:
        raise CliError(str(exc))
    return 0


def cmd_enumerate(args) -> int:
    goal = _parse_goal(args.sequent)
    graph = _load_graph(args.graph)
    try:
        if args.count_only:
            if graph is None:
                n = coherence.count(goal, cap=args.cap)
            else:
                n = mg.m_count(graph, goal, cap=args.cap)
            print(n)
        else:
            if graph is None:
                found = coherence.enumerate_focused(goal, cap=args.cap)
            else:
                found = mg.m_enumerate(graph, goal, cap=args.cap)
            for d in found:
                print(d)
    except coherence.ResourceCapError as exc:
        raise CliError(str(exc), code=3)
    except RecursionError:
        raise CliError("search depth exceeded (cyclic clause set?)", code=3)
    return 0


def cmd_eq(args) -> int:
    goal = _parse_goal(args.sequent)
    try:
        t1 = parse_term(args.term1)
        t2 = parse_term(args.term2)
    except ParseError as exc:
        raise CliError(f"bad term: {exc}")
    try:
        d1 = ct.check_cat(t1, goal)
        d2 = ct.check_cat(t2, goal)
        result = coherence.decide_eq(d1, d2)
    except (CheckError, ValueError) as exc:
        raise CliError(f"type error: {exc}")
    if result.equal:
        print("equal")
        return 0
    print("distinct")
    print(result.lhs_normal)
    print(result.rhs_normal)
    return 2


def cmd_model(args) -> int:
    try:
        spec = md.parse_model_spec(_read(args.spec_file))
        model = md.Model(spec)
    except md.ModelError as exc:
        raise CliError(f"bad model spec: {exc}")
    goal = _parse_goal(args.sequent)
    try:
        term = parse_term(args.term)
    except ParseError as exc:
        raise CliError(f"bad term: {exc}")
    try:
        d = ct.check_cat(term, goal)
    except CheckError as exc:
        raise CliError(f"type error: {exc}")
    try:
        out = md.interp_cat(model, d)
    except md.CapExceeded as exc:
        raise CliError(str(exc), code=3)
    except md.ModelError as exc:
        raise CliError(str(exc))
    if isinstance(out, md.FiniteMap):
        print(f"map {out.domain.n} -> {out.codomain.n}")
        print(" ".join(str(t) for t in out.table))
    else:
        card = model.vcard(d.target)
        print(f"element {out} of {card}")
    return 0


WITNESS_GRAPH = """\
atom X
atom Z
clause g0 : - | X |- Z
"""


def cmd_demo(args) -> int:
    graph = mg.parse_multigraph(WITNESS_GRAPH)
    loose = parse_sequent("- | X |- Z")
    tight = parse_sequent("X | |- Z")
    n_loose = mg.m_count(graph, loose)
    n_tight = mg.m_count(graph, tight)
    print("multigraph: atoms X, Z; clause g0 : - | X |- Z")
    print(f"derivations of {loose}: {n_loose}")
    print(f"derivations of {tight}: {n_tight}")
    if n_loose > n_tight:
        print("pass is not invertible here: the free category on this "
              "multigraph is not left-normal")
        return 0
    print("unexpected: no counterexample found")
    return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewclosed")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="typecheck a term file against a sequent")
    c.add_argument("calculus", choices=["cat", "sf", "seq", "nd", "foc", "nf", "mseq", "mfoc"])
    c.add_argument("term_file")
    c.add_argument("sequent")
    c.add_argument("--graph", default=None)
    c.set_defaults(fn=cmd_check)

    n = sub.add_parser("normalize", help="normalize a derivation")
    n.add_argument("--via", choices=["focus", "hered", "nbe"], required=True)
    n.add_argument("term_file")
    n.add_argument("sequent")
    n.set_defaults(fn=cmd_normalize)

    t = sub.add_parser("translate", help="translate between calculi")
    t.add_argument("--from", dest="src", required=True,
                   choices=["cat", "sf", "seq", "nd", "foc", "nf"])
    t.add_argument("--to", dest="dst", required=True,
                   choices=["cat", "sf", "seq", "nd", "foc", "nf"])
    t.add_argument("--context", default=None,
                   help="comma-separated context for cat -> seq")
    t.add_argument("--graph", default=None)
    t.add_argument("term_file")
    t.add_argument("sequent")
    t.set_defaults(fn=cmd_translate)

    e = sub.add_parser("enumerate", help="enumerate focused derivations")
    e.add_argument("--count-only", action="store_true")
    e.add_argument("--graph", default=None)
    e.add_argument("--cap", type=int, default=10 ** 6)
    e.add_argument("sequent")
    e.set_defaults(fn=cmd_enumerate)

    q = sub.add_parser("eq", help="decide equality of two categorical maps")
    q.add_argument("term1")
    q.add_argument("term2")
    q.add_argument("sequent")
    q.set_defaults(fn=cmd_eq)

    m = sub.add_parser("model", help="finite-set model operations")
    msub = m.add_subparsers(dest="model_command", required=True)
    me = msub.add_parser("eval", help="evaluate a categorical term in a model")
    me.add_argument("spec_file")
    me.add_argument("term")
    me.add_argument("sequent")
    me.set_defaults(fn=cmd_model)

    d = sub.add_parser("demo", help="built-in demonstrations")
    dsub = d.add_subparsers(dest="demo_command", required=True)
    dn = dsub.add_parser("nonleftnormal",
                         help="count witness: pass is not invertible over a multigraph")
    dn.set_defaults(fn=cmd_demo)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
