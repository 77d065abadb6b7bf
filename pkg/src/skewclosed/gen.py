"""Seeded random corpora of formulae and typed derivations.

Generation is bottom-up: start from axiom leaves over random formulae
and repeatedly apply whichever constructors are applicable, choosing
uniformly. Every produced derivation is well-typed by construction.
Only the test harness uses randomness; CLI paths never do.
"""

from __future__ import annotations

import random
from typing import Callable, List, Optional, Sequence, Tuple

from . import bridge, cat_calc as ct, coherence, focused as fc, nat_ded as nd, seq_calc as sq
from .syntax import Atom, Formula, Imp, Sequent


def random_formula(rng: random.Random, atoms: Sequence[str], depth: int) -> Formula:
    if depth <= 0 or rng.random() < 0.4:
        return Atom(rng.choice(list(atoms)))
    return Imp(random_formula(rng, atoms, depth - 1),
               random_formula(rng, atoms, depth - 1))


def random_nd(rng: random.Random, atoms: Sequence[str], size: int,
              depth: int = 2) -> nd.NdDeriv:
    """A random well-typed natural deduction derivation of about `size` rules."""
    pool: List[nd.NdDeriv] = [nd.n_ax(random_formula(rng, atoms, depth))
                              for _ in range(3)]
    best = pool[0]
    for _ in range(size * 4):
        if nd.nd_size(best) >= size:
            break
        choice = rng.randrange(4)
        d = rng.choice(pool)
        try:
            if choice == 0:
                new = nd.n_ax(random_formula(rng, atoms, depth))
            elif choice == 1 and d.stoup is not None:
                new = nd.n_pass(d)
            elif choice == 2 and d.context:
                new = nd.n_imp_i(d)
            else:
                funs = [f for f in pool if isinstance(f.succedent, Imp)]
                rng.shuffle(funs)
                new = None
                for f in funs:
                    args = [g for g in pool
                            if g.stoup is None and g.succedent == f.succedent.antecedent]
                    if args:
                        new = nd.n_imp_e(f, rng.choice(args))
                        break
                if new is None:
                    a = random_formula(rng, atoms, depth - 1)
                    # seed an applicable pair: identity at a, and its eta unit
                    pool.append(nd.n_imp_i(nd.n_pass(nd.n_ax(a))))
                    continue
        except ValueError:
            continue
        pool.append(new)
        if nd.nd_size(new) > nd.nd_size(best) and nd.nd_size(new) <= size:
            best = new
    return best


def random_seq(rng: random.Random, atoms: Sequence[str], size: int,
               depth: int = 2) -> sq.SeqDeriv:
    pool: List[sq.SeqDeriv] = [sq.s_ax(random_formula(rng, atoms, depth))
                               for _ in range(3)]
    best = pool[0]
    for _ in range(size * 4):
        if sq.deriv_size(best) >= size:
            break
        choice = rng.randrange(4)
        d = rng.choice(pool)
        try:
            if choice == 0:
                new = sq.s_ax(random_formula(rng, atoms, depth))
            elif choice == 1 and d.stoup is not None:
                new = sq.s_pass(d)
            elif choice == 2 and d.context:
                new = sq.s_imp_r(d)
            else:
                loose = [f for f in pool if f.stoup is None]
                tight = [g for g in pool if g.stoup is not None]
                if not loose or not tight:
                    pool.append(sq.s_pass(rng.choice(tight)) if tight
                                else sq.s_ax(Atom(rng.choice(list(atoms)))))
                    continue
                new = sq.s_imp_l(rng.choice(loose), rng.choice(tight))
        except ValueError:
            continue
        pool.append(new)
        if sq.deriv_size(new) > sq.deriv_size(best) and sq.deriv_size(new) <= size:
            best = new
    return best


def sample_hom(rng: random.Random, source, target: Formula,
               limit: int = 200) -> Optional[sq.SeqDeriv]:
    """A random inhabitant of the sequent S| |- C, if any."""
    import itertools
    found = list(itertools.islice(coherence.iter_focused(Sequent(source, (), target)), limit))
    if not found:
        return None
    return fc.emb_I(rng.choice(found))


def sample_cat_map(rng: random.Random, atoms: Sequence[str], depth: int = 2,
                   tight: bool = True, tries: int = 60) -> ct.CatDeriv:
    """A random categorical map (tight) or element (loose).

    Sampled through the coherence enumerator and the soundness
    translation, retrying formulas until the hom-set is inhabited.
    Falls back to an identity (tight) or j (loose), which always exist.
    """
    for _ in range(tries):
        target = random_formula(rng, atoms, depth)
        source: Optional[Formula]
        if tight:
            source = target if rng.random() < 0.4 else random_formula(rng, atoms, depth)
        else:
            source = None
        f = sample_hom(rng, source, target)
        if f is not None:
            d = bridge.sound(f)
            return d
    if tight:
        a = random_formula(rng, atoms, depth)
        return ct.c_id(a)
    return ct.c_j(random_formula(rng, atoms, depth - 1))


def sample_cat_chain(rng: random.Random, atoms: Sequence[str], length: int,
                     depth: int = 2, tries: int = 60) -> List[ct.CatDeriv]:
    """A composable chain of tight maps f1 : A0 => A1, f2 : A1 => A2, ..."""
    for _ in range(tries):
        start = random_formula(rng, atoms, depth)
        chain: List[ct.CatDeriv] = []
        cur = start
        ok = True
        for _ in range(length):
            nxt = cur if rng.random() < 0.5 else random_formula(rng, atoms, depth)
            f = sample_hom(rng, cur, nxt)
            if f is None:
                ok = False
                break
            chain.append(bridge.sound(f))
            cur = nxt
        if ok:
            return chain
    a = random_formula(rng, atoms, depth)
    return [ct.c_id(a) for _ in range(length)]


def sample_cat_element(rng: random.Random, atoms: Sequence[str], depth: int = 2) -> ct.CatDeriv:
    return sample_cat_map(rng, atoms, depth, tight=False)


def cat_equation_instances(rng: random.Random, atoms: Sequence[str],
                           depth: int = 2) -> List[ct.CatEquation]:
    """One seeded instance of each of the thirteen generator families."""
    a = random_formula(rng, atoms, depth)
    b = random_formula(rng, atoms, depth)
    c = random_formula(rng, atoms, depth)
    d = random_formula(rng, atoms, depth)
    e = sample_cat_element(rng, atoms, depth)
    h_e = _tight_from(rng, atoms, e.target, depth)
    maps = {
        "f": sample_cat_map(rng, atoms, depth),
        "g": sample_cat_map(rng, atoms, depth),
        "chain": tuple(sample_cat_chain(rng, atoms, 3, depth)),
        "pair": tuple(sample_cat_chain(rng, atoms, 2, depth)
                      + sample_cat_chain(rng, atoms, 2, depth)),
        "e": e,
        "h_e": h_e,
        "trip": (sample_cat_map(rng, atoms, depth), sample_cat_map(rng, atoms, depth),
                 sample_cat_map(rng, atoms, depth)),
    }
    return ct.eq_generators((a, b, c, d), maps)


def _tight_from(rng: random.Random, atoms: Sequence[str], source: Formula,
                depth: int, tries: int = 40) -> ct.CatDeriv:
    for _ in range(tries):
        target = source if rng.random() < 0.5 else random_formula(rng, atoms, depth)
        f = sample_hom(rng, source, target)
        if f is not None:
            return bridge.sound(f)
    return ct.c_id(source)


# exhaustive sequent spaces

def formulas_upto(atoms: Sequence[str], size: int) -> List[Formula]:
    by_size: dict = {1: [Atom(a) for a in atoms]}
    for n in range(3, size + 1, 2):
        out = []
        for left in range(1, n - 1, 2):
            right = n - 1 - left
            for f in by_size.get(left, ()):
                for g in by_size.get(right, ()):
                    out.append(Imp(f, g))
        by_size[n] = out
    result = []
    for n in sorted(by_size):
        if n <= size:
            result.extend(by_size[n])
    return result


def sequents_upto(atoms: Sequence[str], total_size: int) -> List[Sequent]:
    """All sequents whose total formula size is at most total_size."""
    formulas = formulas_upto(atoms, total_size)
    from .syntax import formula_size

    def contexts(budget: int):
        yield ()
        for f in formulas:
            n = formula_size(f)
            if n > budget:
                continue
            for rest in contexts(budget - n):
                yield (f,) + rest

    out = []
    for succ in formulas:
        s_succ = formula_size(succ)
        for stoup in [None] + formulas:
            s_stoup = 0 if stoup is None else formula_size(stoup)
            budget = total_size - s_succ - s_stoup
            if budget < 0:
                continue
            for ctx in contexts(budget):
                out.append(Sequent(stoup, ctx, succ))
    return out
