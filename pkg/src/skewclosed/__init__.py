"""Proof calculi, normalizers, coherence search and finite-set models
for skew prounital closed categories."""

from .syntax import Atom, Formula, Imp, Sequent, parse_formula, parse_sequent

__all__ = ["Atom", "Formula", "Imp", "Sequent", "parse_formula", "parse_sequent"]
