"""Formulae, sequents and their concrete syntax.

The textual grammars here are the wire format shared by the CLI, the
term files and the golden tests:

    Formula   F   ::= atom | F "-o" F | "(" F ")"      (-o right-associative)
    Sequent   Seq ::= Stoup "|" Ctx "|-" F  |  Stoup "|-" F
    Stoup         ::= "-" | F
    Ctx           ::= empty | F ("," F)*

"-" is the empty stoup; an empty context prints as nothing between "|"
and "|-". The Unicode arrow is accepted as an alias for "-o" on input
and never emitted. All values are immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple


class ParseError(ValueError):
    """Syntax error, carrying the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Formula:
    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", self.name):
            raise ValueError(f"bad atom name: {self.name!r}")


@dataclass(frozen=True)
class Imp(Formula):
    antecedent: Formula
    consequent: Formula


# The stoup is an optional formula; None is the empty stoup.
Stoup = Optional[Formula]
Context = Tuple[Formula, ...]


@dataclass(frozen=True)
class Sequent:
    stoup: Stoup
    context: Context
    succedent: Formula

    def __str__(self) -> str:
        return print_sequent(self)


def imp(a: Formula, b: Formula) -> Formula:
    return Imp(a, b)


def atoms_of(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        return frozenset((f.name,))
    return atoms_of(f.antecedent) | atoms_of(f.consequent)


def formula_size(f: Formula) -> int:
    """Number of tree nodes (atoms plus implications)."""
    if isinstance(f, Atom):
        return 1
    return 1 + formula_size(f.antecedent) + formula_size(f.consequent)


def sequent_size(s: Sequent) -> int:
    """Total formula size of stoup, context and succedent."""
    n = formula_size(s.succedent)
    if s.stoup is not None:
        n += formula_size(s.stoup)
    return n + sum(formula_size(a) for a in s.context)


# ---------------------------------------------------------------------------
# printing

def print_formula(f: Formula) -> str:
    """Canonical minimal-parenthesis rendering; parse(print(f)) == f."""
    if isinstance(f, Atom):
        return f.name
    left = print_formula(f.antecedent)
    if isinstance(f.antecedent, Imp):
        left = f"({left})"
    return f"{left} -o {print_formula(f.consequent)}"


def print_sequent(s: Sequent) -> str:
    stoup = "-" if s.stoup is None else print_formula(s.stoup)
    ctx = ", ".join(print_formula(a) for a in s.context)
    if ctx:
        return f"{stoup} | {ctx} |- {print_formula(s.succedent)}"
    return f"{stoup} | |- {print_formula(s.succedent)}"


# ---------------------------------------------------------------------------
# lexing and parsing

_TOKEN_RE = re.compile(
    r"""
      (?P<WS>\s+)
    | (?P<IMP>-o|⊸)
    | (?P<TURNSTILE>\|-)
    | (?P<PIPE>\|)
    | (?P<LPAR>\()
    | (?P<RPAR>\))
    | (?P<COMMA>,)
    | (?P<DASH>-)
    | (?P<IDENT>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

Token = Tuple[str, str, int]  # kind, text, byte offset


def _lex(text: str) -> Iterator[Token]:
    data = text.encode("utf-8")
    pos = 0
    # Offsets are byte offsets into the UTF-8 encoding of the input.
    src = data.decode("utf-8")
    i = 0
    byte = 0
    while i < len(src):
        m = _TOKEN_RE.match(src, i)
        if m is None:
            raise ParseError(f"unexpected character {src[i]!r}", byte)
        kind = m.lastgroup
        tok = m.group()
        if kind != "WS":
            yield (kind, tok, byte)
        byte += len(tok.encode("utf-8"))
        i = m.end()
    yield ("EOF", "", byte)
    del pos, data


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_lex(text))
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        return self.next()

    # F ::= G ("-o" F)?   with -o right-associative
    def formula(self) -> Formula:
        left = self.formula_atom()
        if self.peek()[0] == "IMP":
            self.next()
            return Imp(left, self.formula())
        return left

    def formula_atom(self) -> Formula:
        kind, text, off = self.peek()
        if kind == "IDENT":
            self.next()
            return Atom(text)
        if kind == "LPAR":
            self.next()
            f = self.formula()
            self.expect("RPAR")
            return f
        raise ParseError(f"expected a formula, found {text or 'end of input'!r}", off)

    def stoup(self) -> Stoup:
        if self.peek()[0] == "DASH":
            self.next()
            return None
        return self.formula()

    def context(self) -> Context:
        if self.peek()[0] in ("TURNSTILE", "EOF"):
            return ()
        ctx = [self.formula()]
        while self.peek()[0] == "COMMA":
            self.next()
            ctx.append(self.formula())
        return tuple(ctx)

    def sequent(self) -> Sequent:
        st = self.stoup()
        if self.peek()[0] == "PIPE":
            self.next()
            ctx = self.context()
        else:
            # contextless form "S |- C", used for categorical sequents
            ctx = ()
        self.expect("TURNSTILE")
        succ = self.formula()
        return Sequent(st, ctx, succ)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    kind, tok, off = p.peek()
    if kind != "EOF":
        raise ParseError(f"trailing input {tok!r}", off)
    return f


def parse_sequent(text: str) -> Sequent:
    p = _Parser(text)
    s = p.sequent()
    kind, tok, off = p.peek()
    if kind != "EOF":
        raise ParseError(f"trailing input {tok!r}", off)
    return s
