"""Groebner bases via Buchberger's algorithm.

The pair handling follows the Gebauer-Moeller refinement of the classic
algorithm (Becker, Weispfenning, "Groebner Bases", section 5.5): the
normal selection strategy picks the pending pair whose leading monomial
lcm is smallest under the active order, Buchberger's first criterion
discards pairs with coprime leading terms, and the chain criterion
discards pairs whose lcm is covered by another basis element. Every
choice is made in a fixed sorted order, so a run is reproducible
bit for bit.

New basis elements are appended monic and fully reduced against the
current basis. ``reduce_basis`` turns any basis into the unique reduced
basis for its ideal and order: leading monomials minimal, every element
monic, no term of any element divisible by another leading monomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .polyring import (
    Poly,
    Ring,
    mono_divides,
    mono_div,
    mono_lcm,
    mono_mul,
    monomial_key,
    reduce_poly,
    s_polynomial,
)

__all__ = [
    "GroebnerBasis",
    "PairBudgetExceeded",
    "buchberger",
    "grevlex_then_lex",
    "reduce_basis",
    "elimination_ideal",
    "is_zero_dimensional",
    "quotient_dimension",
    "is_groebner",
    "reduces_to_zero",
    "Certificate",
    "check_certificate",
]

DEFAULT_PAIR_BUDGET = 10 ** 7


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    order: str
    basis: tuple
    reduced: bool
    pair_count: int = 0

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


class PairBudgetExceeded(RuntimeError):
    """Raised when the pair budget runs out; carries partial progress."""

    def __init__(self, pairs_processed, partial):
        super().__init__(
            f"pair budget exhausted after {pairs_processed} pairs "
            f"({len(partial.basis)} basis elements so far)"
        )
        self.pairs_processed = pairs_processed
        self.partial = partial


def _gm_update(f, G, B, ih, order):
    """Gebauer-Moeller pair set update after appending f[ih].

    G is the sorted list of alive indices, B the pending pair set.
    Candidate pairs are walked in ascending index order so the retained
    set does not depend on hash ordering.
    """
    lm = lambda i: f[i].leading_monomial(order)
    mh = lm(ih)

    C = sorted(G)
    D = []
    while C:
        ig = C.pop(0)
        lcm_hg = mono_lcm(mh, lm(ig))
        coprime = mono_mul(mh, lm(ig)) == lcm_hg

        def covered(ip):
            return mono_divides(mono_lcm(mh, lm(ip)), lcm_hg)

        if coprime or (
            not any(covered(ip) for ip in C)
            and not any(covered(pr[1]) for pr in D)
        ):
            D.append((ih, ig))
    # first criterion: coprime leading terms never produce new information
    E = [
        pr
        for pr in D
        if mono_mul(mh, lm(pr[1])) != mono_lcm(mh, lm(pr[1]))
    ]

    B_new = set()
    for ig1, ig2 in sorted(B):
        lcm12 = mono_lcm(lm(ig1), lm(ig2))
        if (
            not mono_divides(mh, lcm12)
            or mono_lcm(lm(ig1), mh) == lcm12
            or mono_lcm(mh, lm(ig2)) == lcm12
        ):
            B_new.add((ig1, ig2))
    B_new.update(E)

    G_new = [ig for ig in G if not mono_divides(mh, lm(ig))]
    G_new.append(ih)
    G_new.sort()
    return G_new, B_new


def _interreduce(polys, order):
    """Reduce each element against the others until a fixed point."""
    polys = [p for p in polys if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        out = []
        for i, p in enumerate(polys):
            others = out + polys[i + 1:]
            r = reduce_poly(p, others, order) if others else p
            if r.is_zero():
                changed = True
                continue
            r = r.monic(order)
            if r != p:
                changed = True
            out.append(r)
        polys = out
    return polys


def buchberger(generators, order="lex", pair_budget=DEFAULT_PAIR_BUDGET):
    """Compute the reduced Groebner basis of the given ideal generators.

    Raises PairBudgetExceeded, carrying partial progress, when more
    than ``pair_budget`` critical pairs have been processed.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    ring = generators[0].ring
    for g in generators:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
        if g.is_zero():
            raise ValueError("zero generator")
    key = monomial_key(order)

    f = _interreduce(generators, order)
    if not f:
        raise ValueError("generators reduce to nothing")

    G = []
    B = set()
    for ih in range(len(f)):
        G, B = _gm_update(f, G, B, ih, order)

    def reducers():
        return [
            f[g]
            for g in sorted(G, key=lambda i: (key(f[i].leading_monomial(order)), i))
        ]

    pair_count = 0
    while B:
        pair = min(
            B,
            key=lambda pr: (
                key(
                    mono_lcm(
                        f[pr[0]].leading_monomial(order),
                        f[pr[1]].leading_monomial(order),
                    )
                ),
                pr,
            ),
        )
        B.remove(pair)
        pair_count += 1
        if pair_count > pair_budget:
            partial = GroebnerBasis(
                ring, order, tuple(f[g] for g in G), False, pair_count
            )
            raise PairBudgetExceeded(pair_count, partial)
        s = s_polynomial(f[pair[0]], f[pair[1]], order)
        if s.is_zero():
            continue
        r = reduce_poly(s, reducers(), order)
        if r.is_zero():
            continue
        ih = len(f)
        f.append(r.monic(order))
        G, B = _gm_update(f, G, B, ih, order)

    raw = GroebnerBasis(ring, order, tuple(f[g] for g in G), False, pair_count)
    return replace(reduce_basis(raw), pair_count=pair_count)


def grevlex_then_lex(generators, pair_budget=DEFAULT_PAIR_BUDGET):
    """Two stage pipeline: grevlex basis first, then recompute under lex.

    The intermediate basis generates the same ideal, so the second stage
    yields exactly the reduced lex basis of the input ideal; the grevlex
    stage usually makes the lex stage cheaper on dense inputs.
    """
    stage1 = buchberger(generators, "grevlex", pair_budget=pair_budget)
    remaining = max(pair_budget - stage1.pair_count, 1)
    stage2 = buchberger(list(stage1.basis), "lex", pair_budget=remaining)
    return replace(stage2, pair_count=stage1.pair_count + stage2.pair_count)


def reduce_basis(gb):
    """The unique reduced basis of the ideal spanned by gb, same order."""
    order = gb.order
    key = monomial_key(order)
    polys = [p.monic(order) for p in gb.basis if not p.is_zero()]
    if not polys:
        raise ValueError("cannot reduce an empty basis")
    # minimality: walk ascending leading monomials, drop covered ones
    polys.sort(key=lambda p: key(p.leading_monomial(order)))
    minimal = []
    for p in polys:
        lm = p.leading_monomial(order)
        if not any(mono_divides(q.leading_monomial(order), lm) for q in minimal):
            minimal.append(p)
    # full tail reduction; leading monomials are now pairwise incomparable
    out = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = reduce_poly(p, others, order) if others else p
        out.append(r.monic(order))
    out.sort(key=lambda p: key(p.leading_monomial(order)), reverse=True)
    return GroebnerBasis(gb.ring, order, tuple(out), True, gb.pair_count)


def elimination_ideal(gb, l):
    """Basis of the ideal's intersection with k[x_l, ..., x_(n-1)].

    Requires a lex basis; by the elimination theorem the returned
    polynomials form a Groebner basis of the elimination ideal in the
    smaller ring.
    """
    if gb.order != "lex":
        raise ValueError("elimination needs a lex basis")
    arity = gb.ring.arity
    if not 0 <= l <= arity:
        raise ValueError(f"elimination index {l} out of range")
    sub_ring = Ring(gb.ring.vars[l:], gb.ring.field)
    kept = []
    for p in gb.basis:
        if all(i >= l for i in p.support()):
            terms = tuple((m[l:], c) for m, c in p.terms)
            kept.append(Poly(sub_ring, terms, _canonical=True))
    return GroebnerBasis(sub_ring, "lex", tuple(kept), gb.reduced, gb.pair_count)


def _has_constant(gb):
    return any(p.is_constant() and not p.is_zero() for p in gb.basis)


def is_zero_dimensional(gb):
    """True iff every variable has a pure power among the leading monomials."""
    if _has_constant(gb):
        return True
    arity = gb.ring.arity
    lms = [p.leading_monomial(gb.order) for p in gb.basis]
    for i in range(arity):
        if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
            return False
    return True


def quotient_dimension(gb):
    """Number of standard monomials, or math.inf for positive dimension.

    Counts monomials outside the leading term ideal; for a
    zero-dimensional ideal this equals the k-dimension of the quotient
    ring and bounds the number of solutions.
    """
    if not gb.reduced:
        raise ValueError("quotient_dimension needs a reduced basis")
    if _has_constant(gb):
        return 0
    if not is_zero_dimensional(gb):
        return math.inf
    arity = gb.ring.arity
    lms = [p.leading_monomial(gb.order) for p in gb.basis]
    bound = []
    for i in range(arity):
        pures = [m[i] for m in lms if m[i] > 0 and sum(m) == m[i]]
        bound.append(min(pures))
    by_maxvar = [[] for _ in range(arity)]
    for m in lms:
        top = max(i for i, e in enumerate(m) if e)
        by_maxvar[top].append(m)

    prefix = [0] * arity

    def count(i):
        if i == arity:
            return 1
        total = 0
        for e in range(bound[i]):
            prefix[i] = e
            blocked = any(
                all(m[j] <= prefix[j] for j in range(i + 1))
                for m in by_maxvar[i]
            )
            if not blocked:
                total += count(i + 1)
        prefix[i] = 0
        return total

    return count(0)


def is_groebner(gb):
    """S-pair fixpoint check: every S-polynomial reduces to zero."""
    basis = list(gb.basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = s_polynomial(basis[i], basis[j], gb.order)
            if s.is_zero():
                continue
            if not reduce_poly(s, basis, gb.order).is_zero():
                return False
    return True


def reduces_to_zero(f, gb):
    return reduce_poly(f, list(gb.basis), gb.order).is_zero()


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """Data for an exact identity sum(g_i * f_i) = 1 (+ sum of squares)."""

    f_list: tuple
    g_list: tuple
    p_list: tuple = field(default=())


def check_certificate(cert, target="one"):
    """Exact verification of a positivity / infeasibility certificate.

    target "one": checks sum(g_i * f_i) == 1 with an empty square list.
    target "one_plus_squares": checks sum(g_i * f_i) == 1 + sum(p_i^2).
    """
    if target not in ("one", "one_plus_squares"):
        raise ValueError(f"unknown certificate target {target!r}")
    f_list = tuple(cert.f_list)
    g_list = tuple(cert.g_list)
    p_list = tuple(cert.p_list)
    if len(f_list) != len(g_list) or not f_list:
        raise ValueError("certificate needs matching nonempty f and g lists")
    if target == "one" and p_list:
        raise ValueError("target 'one' does not take square terms")
    ring = f_list[0].ring
    for p in f_list + g_list + p_list:
        if p.ring != ring:
            raise ValueError("certificate polynomials live in different rings")
    acc = Poly.zero(ring)
    for fi, gi in zip(f_list, g_list):
        acc = acc + gi * fi
    rhs = Poly.one(ring)
    for pi in p_list:
        rhs = rhs + pi * pi
    return acc == rhs
