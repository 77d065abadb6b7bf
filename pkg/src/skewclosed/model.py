"""Finite-set models: the semantic oracle for provable equality.

Objects are finite cardinalities drawn from the set M generated by
3 and closure under exponentiation. The plain model interprets
A -o B as the full function space; the Kleisli model over the reader
monad T m = m^k interprets it as m -o T n, which is skew: the
derivable map sending f : A -> B to an element of A -o B is not
surjective, so the model is not left-normal.

Representation: an element of an atomic object is an int below its
cardinality; an element of A -o B is a closure from elements of A to
values of B, where a value is an element (plain) or a k-tuple of
elements (Kleisli). Tight maps have the same shape as hom elements.
Closures keep everything lazy, so structural maps at astronomically
large objects still evaluate; tables are only materialized below the
configured cap. Extensional equality is checked exhaustively over
small domains and on a seeded probe sample over large ones, within a
work budget.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .syntax import Atom, Formula, Imp, parse_formula


class ModelError(ValueError):
    pass


class CapExceeded(ModelError):
    """An operation would materialize or iterate beyond the cap."""


DEFAULT_CAP = 10 ** 7
EXHAUSTIVE_LIMIT = 100  # domains up to this size are compared pointwise


def m_members(cap: int) -> frozenset:
    """The members of M (3, closed under n^m) that do not exceed cap."""
    out = {3}
    while True:
        new = {n ** m for m in out for n in out if n ** m <= cap}
        if new <= out:
            return frozenset(out)
        out |= new


@dataclass(frozen=True)
class CardObject:
    """A cardinality in M, checked on construction."""
    n: int
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.n > self.cap:
            raise CapExceeded(f"cardinality {self.n} exceeds cap {self.cap}")
        if self.n not in m_members(self.cap):
            raise ModelError(f"{self.n} is not in M (generated by 3 under exponentiation)")


@dataclass(frozen=True)
class FiniteMap:
    domain: CardObject
    codomain: CardObject
    table: Tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.domain.n:
            raise ModelError("table length must equal the domain cardinality")
        if any(not 0 <= t < self.codomain.n for t in self.table):
            raise ModelError("table entry out of codomain range")


@dataclass(frozen=True)
class ModelSpec:
    mode: str  # "plain" or "kleisli"
    k: Optional[int] = None
    assignment: Dict[str, int] = field(default_factory=dict)
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.mode not in ("plain", "kleisli"):
            raise ModelError(f"unknown mode {self.mode!r}")
        if (self.mode == "kleisli") != (self.k is not None):
            raise ModelError("kleisli mode needs k; plain mode takes none")


def parse_model_spec(text: str) -> ModelSpec:
    """Config format: lines `mode plain|kleisli <k>` and `atom <name> <card>`."""
    mode, k = "plain", None
    assignment: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "mode":
            mode = parts[1]
            k = int(parts[2]) if len(parts) > 2 else None
        elif parts[0] == "atom" and len(parts) == 3:
            assignment[parts[1]] = int(parts[2])
        else:
            raise ModelError(f"bad model spec line {lineno}: {raw!r}")
    return ModelSpec(mode, k, assignment)


# Values: plain values are elements; Kleisli values are k-tuples of
# elements (elements of T B). Elements of implications are closures.
Element = Union[int, Callable]
Value = Union[int, Callable, Tuple]


class Model:
    def __init__(self, spec: ModelSpec):
        self.spec = spec
        self.k = spec.k or 0
        self.kleisli = spec.mode == "kleisli"
        for name, n in spec.assignment.items():
            CardObject(n, spec.cap)  # validates membership and cap
        if self.kleisli:
            CardObject(self.k, spec.cap)

    # -- cardinalities ------------------------------------------------

    def card(self, f: Formula) -> int:
        if isinstance(f, Atom):
            try:
                return self.spec.assignment[f.name]
            except KeyError:
                raise ModelError(f"atom {f.name!r} has no assigned cardinality") from None
        return self.vcard(f.consequent) ** self.card(f.antecedent)

    def vcard(self, f: Formula) -> int:
        """Cardinality of the value space of f (T f in Kleisli mode)."""
        n = self.card(f)
        return n ** self.k if self.kleisli else n

    def card_at_most(self, f: Formula, bound: int) -> Optional[int]:
        """Exact cardinality if it is <= bound, else None.

        Never performs an exponentiation whose result would exceed the
        bound; nested implications have astronomically large towers
        whose literal value must not be computed.
        """
        if isinstance(f, Atom):
            n = self.card(f)
            return n if n <= bound else None
        base = self.vcard_at_most(f.consequent, bound)
        if base is None:
            return None
        exp = self.card_at_most(f.antecedent, bound)
        if exp is None:
            return None
        if exp * max(1, base.bit_length() - 1) > bound.bit_length():
            return None
        n = base ** exp
        return n if n <= bound else None

    def vcard_at_most(self, f: Formula, bound: int) -> Optional[int]:
        n = self.card_at_most(f, bound)
        if n is None:
            return None
        if self.kleisli:
            if self.k * max(1, n.bit_length() - 1) > bound.bit_length():
                return None
            n = n ** self.k
            return n if n <= bound else None
        return n

    def interp_formula(self, f: Formula) -> CardObject:
        n = self.card_at_most(f, self.spec.cap)
        if n is None:
            raise CapExceeded(f"interpretation of {f} exceeds cap {self.spec.cap}")
        return CardObject(n, self.spec.cap)

    # -- encoding: element <-> table index, big-endian positional ----

    def encode(self, x: Element, f: Formula) -> int:
        if isinstance(f, Atom):
            return x
        m = self.card(f.antecedent)
        if m > self.spec.cap:
            raise CapExceeded(f"cannot tabulate over {f.antecedent} ({m} elements)")
        base = self.vcard(f.consequent)
        out = 0
        for i in range(m):
            out = out * base + self.encode_value(x(self.decode(i, f.antecedent)), f.consequent)
        return out

    def encode_value(self, v: Value, f: Formula) -> int:
        if not self.kleisli:
            return self.encode(v, f)
        base = self.card(f)
        out = 0
        for comp in v:
            out = out * base + self.encode(comp, f)
        return out

    def decode(self, n: int, f: Formula) -> Element:
        if isinstance(f, Atom):
            return n
        m = self.card(f.antecedent)
        if m > self.spec.cap:
            raise CapExceeded(f"cannot tabulate over {f.antecedent} ({m} elements)")
        base = self.vcard(f.consequent)

        def elem(a, n=n, m=m, base=base, f=f):
            i = self.encode(a, f.antecedent)
            digit = (n // base ** (m - 1 - i)) % base
            return self.decode_value(digit, f.consequent)

        return elem

    def decode_value(self, n: int, f: Formula) -> Value:
        if not self.kleisli:
            return self.decode(n, f)
        base = self.card(f)
        return tuple(self.decode((n // base ** (self.k - 1 - c)) % base, f)
                     for c in range(self.k))

    # -- canonical and pseudo-random elements -------------------------

    def zero(self, f: Formula) -> Element:
        if isinstance(f, Atom):
            return 0
        return lambda a: self.zero_value(f.consequent)

    def zero_value(self, f: Formula) -> Value:
        if self.kleisli:
            return tuple(self.zero(f) for _ in range(self.k))
        return self.zero(f)

    def obs(self, x: Element, f: Formula) -> int:
        """A deterministic small fingerprint of x's behaviour.

        Only the canonical zero element is probed: evaluating a probe
        never recurses through obs again, so fingerprinting stays
        linear in the formula size.
        """
        if isinstance(f, Atom):
            return x
        return self.obs_value(x(self.zero(f.antecedent)), f.consequent)

    def obs_value(self, v: Value, f: Formula) -> int:
        if not self.kleisli:
            return self.obs(v, f)
        acc = 0
        for comp in v:
            acc = acc * 1000003 + self.obs(comp, f)
        return acc & 0x7FFFFFFF

    def prand(self, f: Formula, seed: int) -> Element:
        """A pseudo-random element determined by the seed.

        At implications the result is a genuine function: its output
        depends only on the argument's extensional fingerprint.
        """
        if isinstance(f, Atom):
            return (seed * 2654435761 + 40503) % self.card(f)
        def elem(a, f=f, seed=seed):
            mix = (seed * 1000003 + self.obs(a, f.antecedent) + 1) & 0x7FFFFFFF
            return self.prand_value(f.consequent, mix)
        return elem

    def prand_value(self, f: Formula, seed: int) -> Value:
        if self.kleisli:
            return tuple(self.prand(f, seed + 7919 * c) for c in range(self.k))
        return self.prand(f, seed)

    def probes(self, f: Formula, budget: int, seed: int) -> List[Element]:
        n = self.card_at_most(f, min(EXHAUSTIVE_LIMIT, budget))
        if n is not None:
            return [self.decode(i, f) for i in range(n)]
        count = max(2, min(8, budget // 24))
        return [self.zero(f)] + [self.prand(f, seed + 31 * i) for i in range(count - 1)]

    # -- extensional equality within a work budget --------------------

    def eq_elements(self, x: Element, y: Element, f: Formula, budget: int = 512,
                    seed: int = 0) -> bool:
        if isinstance(f, Atom):
            return x == y
        points = self.probes(f.antecedent, budget, seed)
        sub = max(1, budget // max(1, len(points)))
        return all(self.eq_values(x(p), y(p), f.consequent, sub, seed + 101 * i)
                   for i, p in enumerate(points))

    def eq_values(self, v: Value, w: Value, f: Formula, budget: int = 512,
                  seed: int = 0) -> bool:
        if not self.kleisli:
            return self.eq_elements(v, w, f, budget, seed)
        return all(self.eq_elements(a, b, f, budget, seed + 13 * c)
                   for c, (a, b) in enumerate(zip(v, w)))

    def eq_maps(self, fmap, gmap, src: Formula, tgt: Formula, budget: int = 512,
                seed: int = 0) -> bool:
        points = self.probes(src, budget, seed)
        sub = max(1, budget // max(1, len(points)))
        return all(self.eq_values(fmap(p), gmap(p), tgt, sub, seed + 37 * i)
                   for i, p in enumerate(points))

    # -- structural maps ----------------------------------------------
    #
    # Tight maps are closures Element -> Value; loose values are
    # Values. These realize id, composition, the hom functor and
    # j, i, L, with the Kleisli variants threading the reader index.

    def m_id(self):
        if self.kleisli:
            return lambda x: tuple(x for _ in range(self.k))
        return lambda x: x

    def act(self, fmap, v: Value) -> Value:
        """The hom-set action on loose values: f composed after v."""
        if self.kleisli:
            return tuple(fmap(v[c])[c] for c in range(self.k))
        return fmap(v)

    def m_comp(self, fmap, gmap):
        if self.kleisli:
            def comp(x):
                fv = fmap(x)
                return tuple(gmap(fv[c])[c] for c in range(self.k))
            return comp
        return lambda x: gmap(fmap(x))

    def m_imp(self, fmap, gmap):
        """Functorial action: (f -o g)(t) with f contravariant."""
        if self.kleisli:
            def out(t):
                def elem(x):
                    return tuple(gmap(t(fmap(x)[c])[c])[c] for c in range(self.k))
                return tuple(elem for _ in range(self.k))
            return out
        return lambda t: (lambda c: gmap(t(fmap(c))))

    def m_j(self) -> Value:
        if self.kleisli:
            ident = lambda x: tuple(x for _ in range(self.k))
            return tuple(ident for _ in range(self.k))
        return lambda x: x

    def m_i(self, e: Value):
        """Evaluation at the element e: a map A -o B => B."""
        if self.kleisli:
            return lambda t: tuple(t(e[c])[c] for c in range(self.k))
        return lambda t: t(e)

    def m_L(self):
        """Precomposition: B -o C => (A -o B) -o (A -o C)."""
        if self.kleisli:
            def out(g):
                def with_f(f):
                    def elem(x):
                        return tuple(g(f(x)[c])[c] for c in range(self.k))
                    return tuple(elem for _ in range(self.k))
                return tuple(with_f for _ in range(self.k))
            return out
        return lambda g: (lambda f: (lambda x: g(f(x))))

    def m_jhat(self, fmap) -> Value:
        """(A -o f) applied to j: the left-normality comparison map."""
        return self.act(self.m_imp(self.m_id(), fmap), self.m_j())


# ---------------------------------------------------------------------------
# interpreting categorical derivations

def interp_cat_value(model: Model, d) -> Union[Value, Callable]:
    """The map or loose value denoted by a categorical derivation."""
    from . import cat_calc as ct
    if isinstance(d, ct.CId):
        return model.m_id()
    if isinstance(d, ct.CComp):
        first = interp_cat_value(model, d.first)
        second = interp_cat_value(model, d.second)
        if d.first.source is None:
            return model.act(second, first)
        return model.m_comp(first, second)
    if isinstance(d, ct.CImp):
        return model.m_imp(interp_cat_value(model, d.contra),
                           interp_cat_value(model, d.co))
    if isinstance(d, ct.CJ):
        return model.m_j()
    if isinstance(d, ct.CI):
        return model.m_i(interp_cat_value(model, d.element))
    if isinstance(d, ct.CL):
        return model.m_L()
    raise ModelError(f"no model interpretation for {type(d).__name__}")


def interp_cat(model: Model, d) -> Union[FiniteMap, int]:
    """Materialize a derivation's denotation: a FiniteMap, or an
    encoded element for empty-stoup derivations. Fails above the cap."""
    v = interp_cat_value(model, d)
    cap = model.spec.cap
    if d.source is None:
        n = model.vcard_at_most(d.target, cap)
        if n is None:
            raise CapExceeded(f"value space of {d.target} exceeds cap {cap}")
        return model.encode_value(v, d.target)
    m = model.card_at_most(d.source, cap)
    n = model.vcard_at_most(d.target, cap)
    if m is None or n is None:
        raise CapExceeded(f"map {d.source} to {d.target} too large to tabulate")
    table = tuple(model.encode_value(v(model.decode(i, d.source)), d.target)
                  for i in range(m))
    return FiniteMap(CardObject(m, cap), CardObject(n, cap), table)


def eq_interp(model: Model, d1, d2, budget: int = 512, seed: int = 0) -> bool:
    """Extensional equality of two derivations' denotations."""
    if d1.source != d2.source or d1.target != d2.target:
        raise ModelError("derivations of different types")
    v1 = interp_cat_value(model, d1)
    v2 = interp_cat_value(model, d2)
    if d1.source is None:
        return model.eq_values(v1, v2, d1.target, budget, seed)
    return model.eq_maps(v1, v2, d1.source, d1.target, budget, seed)


# ---------------------------------------------------------------------------
# the axioms, checked directly against the structural maps

@dataclass(frozen=True)
class AxiomFailure:
    name: str
    objects: Tuple[Formula, ...]
    detail: str


def _tuples(objects: Sequence[Formula], n: int, cap: int):
    """Deterministic sample of object tuples: everything when the full
    product is small, else an evenly strided subset."""
    total = len(objects) ** n
    if total <= cap:
        yield from itertools.product(objects, repeat=n)
        return
    stride = total // cap
    for idx in range(0, total, stride):
        tup = []
        rest = idx
        for _ in range(n):
            rest, pos = divmod(rest, len(objects))
            tup.append(objects[pos])
        yield tuple(tup)


def check_axioms(model: Model, objects: Sequence[Formula], budget: int = 192,
                 map_samples: int = 2, tuple_cap: int = 50) -> List[AxiomFailure]:
    """Instantiate (c1)-(c5) and the three naturality laws at the given
    objects and verify extensional equality; returns failures.

    Families of arity above two are instantiated on an evenly strided
    sample of at most tuple_cap object tuples; comparisons at domains
    beyond EXHAUSTIVE_LIMIT are probe-sampled within the work budget.
    """
    failures: List[AxiomFailure] = []

    def maps_between(src: Formula, tgt: Formula, seed: int):
        # arbitrary seeded tables; every table is a morphism here
        out = [lambda x, s=seed + i: model.prand_value(tgt, (s * 31 + model.obs(x, src)) & 0x7FFFFFFF)
               for i in range(map_samples)]
        if src == tgt:
            out.append(model.m_id())
        return out

    def elems_of(a: Formula, seed: int):
        return [model.zero_value(a), model.prand_value(a, seed)]

    def record(name, objs, ok):
        if not ok:
            failures.append(AxiomFailure(name, tuple(objs), "sides differ extensionally"))

    seed = 12345
    for a in objects:
        for e in elems_of(a, seed := seed + 1):
            # (c1): i(e) acting on j equals e
            lhs = model.act(model.m_i(e), model.m_j())
            record("c1", [a], model.eq_values(lhs, e, a, budget, seed))
    for a in objects:
        for c in objects:
            # (c2): i(j) . L = id
            lhs = model.m_comp(model.m_L(), model.m_i(model.m_j()))
            record("c2", [a, c],
                   model.eq_maps(lhs, model.m_id(), Imp(a, c), Imp(a, c), budget, seed := seed + 1))
    for a in objects:
        for b in objects:
            # (c3): L acting on j equals j at A -o B
            lhs = model.act(model.m_L(), model.m_j())
            record("c3", [a, b],
                   model.eq_values(lhs, model.m_j(), Imp(Imp(a, b), Imp(a, b)),
                                   budget, seed := seed + 1))
    for a, b, c in _tuples(objects, 3, tuple_cap):
        for e in elems_of(a, seed := seed + 1):
            # (c4): (id -o i(e)) . L = i(e) -o id
            lhs = model.m_comp(model.m_L(), model.m_imp(model.m_id(), model.m_i(e)))
            rhs = model.m_imp(model.m_i(e), model.m_id())
            record("c4", [a, b, c],
                   model.eq_maps(lhs, rhs, Imp(b, c), Imp(Imp(a, b), c), budget, seed))
    for a, b, c, d in _tuples(objects, 4, tuple_cap):
        # (c5): (id -o L) . L = (L -o id) . L . L
        lhs = model.m_comp(model.m_L(), model.m_imp(model.m_id(), model.m_L()))
        rhs = model.m_comp(model.m_comp(model.m_L(), model.m_L()),
                           model.m_imp(model.m_L(), model.m_id()))
        tgt = Imp(Imp(b, c), Imp(Imp(a, b), Imp(a, d)))
        record("c5", [a, b, c, d],
               model.eq_maps(lhs, rhs, Imp(c, d), tgt, budget, seed := seed + 1))
    # naturality of j: (f -o id) . j = (id -o f) . j, f : A => B
    for a in objects:
        for b in objects:
            for f in maps_between(a, b, seed := seed + 1):
                lhs = model.act(model.m_imp(f, model.m_id()), model.m_j())
                rhs = model.act(model.m_imp(model.m_id(), f), model.m_j())
                record("nat-j", [a, b],
                       model.eq_values(lhs, rhs, Imp(a, b), budget, seed))
    # naturality of i: g . i(e) . (h -o id) = i(h . e) . (id -o g)
    for a, a1, b, b1 in _tuples(objects, 4, tuple_cap):
        for h in maps_between(a, a1, seed := seed + 1):
            for g in maps_between(b, b1, seed := seed + 1):
                for e in elems_of(a, seed := seed + 1):
                    lhs = model.m_comp(model.m_comp(
                        model.m_imp(h, model.m_id()), model.m_i(e)), g)
                    rhs = model.m_comp(model.m_imp(model.m_id(), g),
                                       model.m_i(model.act(h, e)))
                    record("nat-i", [a, a1, b, b1],
                           model.eq_maps(lhs, rhs, Imp(a1, b), b1, budget, seed))
    # naturality of L in all three arguments
    for a1, a, b1, b, c, c1 in _tuples(objects, 6, tuple_cap):
        for f in maps_between(a1, a, seed := seed + 1):
            for g in maps_between(b1, b, seed := seed + 1):
                for h in maps_between(c, c1, seed := seed + 1):
                    lhs = model.m_comp(
                        model.m_L(),
                        model.m_imp(model.m_imp(f, g),
                                    model.m_imp(model.m_id(), h)))
                    rhs = model.m_comp(
                        model.m_comp(model.m_imp(g, h), model.m_L()),
                        model.m_imp(model.m_id(), model.m_imp(f, model.m_id())))
                    tgt = Imp(Imp(a, b1), Imp(a1, c1))
                    record("nat-L", [a1, a, b1, b, c, c1],
                           model.eq_maps(lhs, rhs, Imp(b, c), tgt, budget, seed))
    return failures


# ---------------------------------------------------------------------------
# non-left-normality of the Kleisli model

def jhat_image_misses(model: Model, a: Formula, b: Formula) -> Optional[int]:
    """Search the full table of jhat for a value it never takes.

    Returns an encoded element of the value space of a -o b outside the
    image of jhat, or None if jhat is surjective. Only feasible when
    the hom-set of maps a to b is below the cap.
    """
    hom_card = model.card_at_most(Imp(a, b), model.spec.cap)
    if hom_card is None:
        raise CapExceeded("hom set too large to search")
    image = set()
    for i in range(hom_card):
        fmap = _decode_map(model, i, a, b)
        image.add(model.encode_value(model.m_jhat(fmap), Imp(a, b)))
    total = model.vcard(Imp(a, b))
    for candidate in range(total):
        if candidate not in image:
            return candidate
        if candidate > 4 * hom_card:
            break
    return None


def _decode_map(model: Model, n: int, a: Formula, b: Formula):
    base = model.vcard(b)
    m = model.card(a)

    def fmap(x, n=n):
        i = model.encode(x, a)
        return model.decode_value((n // base ** (m - 1 - i)) % base, b)

    return fmap

