"""Untyped derivation terms: the per-calculus term grammars.

A parsed term is a bare tree (no formulas except where the grammar
carries explicit annotations: `id[F]`, `j[F]`, `L[F,F,F]`, `i[F,F](e)`).
Each calculus module elaborates a skeleton against a goal sequent,
producing a typed derivation or raising CheckError with a path into
the tree.

Grammar, shared by every calculus (unknown tags are rejected at
elaboration time, not parse time):

    T ::= tag | tag "[" args "]" | tag "(" T ("," T)* ")" | T "." T
    tag args are integers, formulas or a clause name, comma-separated;
    "g . f" is composition, f applied first, left-associative.

`iotaP[name](e1, ..., en; k)` is the packaged clause rule of the
multigraph focused calculus; the continuation follows the semicolon.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .syntax import Formula, ParseError, _Parser


class CheckError(ValueError):
    """Ill-typed derivation; path locates the offending node."""

    def __init__(self, message: str, path: Tuple[str, ...] = ()):
        self.path = path
        loc = ".".join(path) if path else "root"
        super().__init__(f"{message} [at {loc}]")


@dataclass(frozen=True)
class Term:
    tag: str
    indices: Tuple[int, ...] = ()
    formulas: Tuple[Formula, ...] = ()
    name: Optional[str] = None
    children: Tuple["Term", ...] = ()
    extra: Tuple["Term", ...] = ()  # iotaP continuation group

    def __str__(self) -> str:
        parts = [self.tag]
        bracket = [str(i) for i in self.indices] + [str(f) for f in self.formulas]
        if self.name is not None:
            bracket.insert(0, self.name)
        if bracket:
            parts.append("[" + ",".join(bracket) + "]")
        if self.children or self.extra:
            inner = ", ".join(str(c) for c in self.children)
            if self.extra:
                inner += "; " + ", ".join(str(c) for c in self.extra)
            parts.append("(" + inner + ")")
        return "".join(parts)


_TOK = re.compile(
    r"""
      (?P<WS>\s+)
    | (?P<IMP>-o|⊸)
    | (?P<LBRACK>\[) | (?P<RBRACK>\])
    | (?P<LPAR>\() | (?P<RPAR>\))
    | (?P<COMMA>,) | (?P<SEMI>;) | (?P<DOT>\.)
    | (?P<NUM>\d+)
    | (?P<IDENT>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _lex_term(text: str):
    i = 0
    byte = 0
    while i < len(text):
        m = _TOK.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", byte)
        if m.lastgroup != "WS":
            yield (m.lastgroup, m.group(), byte)
        byte += len(m.group().encode("utf-8"))
        i = m.end()
    yield ("EOF", "", byte)


# Tags whose bracket group is a clause name rather than formulas.
_NAMED = {"gen", "iota", "iotaP"}


class _TermParser:
    def __init__(self, text: str):
        self.tokens = list(_lex_term(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        return self.next()

    def term(self) -> Term:
        t = self.atom()
        while self.peek()[0] == "DOT":
            self.next()
            rhs = self.atom()
            # "g . f" is comp(f, g): rhs is applied first
            t = Term("comp", children=(rhs, t))
        return t

    def atom(self) -> Term:
        kind, text, off = self.peek()
        if kind == "LPAR":
            self.next()
            t = self.term()
            self.expect("RPAR")
            return t
        if kind != "IDENT":
            raise ParseError(f"expected a term, found {text or 'end of input'!r}", off)
        self.next()
        tag = text
        indices: list = []
        formulas: list = []
        name = None
        if self.peek()[0] == "LBRACK":
            self.next()
            first = True
            while self.peek()[0] != "RBRACK":
                if not first:
                    self.expect("COMMA")
                first = False
                if tag in _NAMED and name is None:
                    name = self.expect("IDENT")[1]
                elif self.peek()[0] == "NUM":
                    indices.append(int(self.next()[1]))
                else:
                    formulas.append(self._formula())
            self.expect("RBRACK")
        children: list = []
        extra: list = []
        if self.peek()[0] == "LPAR":
            self.next()
            group = children
            if self.peek()[0] != "RPAR":
                group.append(self.term())
                while self.peek()[0] in ("COMMA", "SEMI"):
                    if self.next()[0] == "SEMI":
                        group = extra
                    group.append(self.term())
            self.expect("RPAR")
        return Term(tag, tuple(indices), tuple(formulas), name, tuple(children), tuple(extra))

    def _formula(self) -> Formula:
        # Reparse a formula with the formula parser over the token tail.
        # Formula tokens are a subset of term tokens, so collect until a
        # bracket-level comma or the closing bracket.
        depth = 0
        items = []
        start = self.pos
        while True:
            kind, text, off = self.tokens[self.pos]
            if kind == "EOF":
                raise ParseError("unterminated annotation", off)
            if depth == 0 and kind in ("COMMA", "RBRACK"):
                break
            if kind == "LPAR":
                depth += 1
            elif kind == "RPAR":
                depth -= 1
            items.append(text)
            self.pos += 1
        if not items:
            raise ParseError("empty formula annotation", self.tokens[start][2])
        p = _Parser(" ".join(items))
        f = p.formula()
        if p.peek()[0] != "EOF":
            raise ParseError("bad formula annotation", self.tokens[start][2])
        return f


def parse_term(text: str) -> Term:
    p = _TermParser(text)
    t = p.term()
    kind, tok, off = p.peek()
    if kind != "EOF":
        raise ParseError(f"trailing input {tok!r}", off)
    return t
