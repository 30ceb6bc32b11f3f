"""Multivariate polynomials over Q or Q(zeta_n) with exact coefficients.

Monomials are dense exponent tuples. A polynomial keeps its terms as a
tuple sorted strictly decreasing in lex order, which makes the term
list a canonical form: two polynomials are equal iff their ring and
term tuples are equal. Supported term orders are "lex" and "grevlex";
both refine total degree comparisons the usual way, with variable 0
largest.

The division algorithm follows the standard multivariate recipe: at
each step the current leading term is reduced against the first
divisor (in list order) whose leading term divides it, otherwise it
moves to the remainder. No remainder term is divisible by any divisor
leading term.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import CycloNum, QQ, CycloField, field_from_json

__all__ = [
    "ORDERS",
    "monomial_key",
    "mono_mul",
    "mono_div",
    "mono_lcm",
    "mono_divides",
    "mono_degree",
    "Ring",
    "Poly",
    "divide",
    "reduce_poly",
    "s_polynomial",
]

ORDERS = ("lex", "grevlex")


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b; caller must ensure b divides a."""
    out = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in out):
        raise ArithmeticError(f"monomial {b} does not divide {a}")
    return out


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_divides(b, a):
    """True when b divides a, component-wise."""
    return all(x <= y for x, y in zip(b, a))


def mono_degree(a):
    return sum(a)


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def monomial_key(order):
    """Sort key; larger monomials under the order get larger keys."""
    if order == "lex":
        return lambda m: m
    if order == "grevlex":
        return _grevlex_key
    raise ValueError(f"unknown order {order!r}")


# ---------------------------------------------------------------------------
# rings and polynomials
# ---------------------------------------------------------------------------

class Ring:
    """A named variable list over a coefficient field descriptor."""

    __slots__ = ("vars", "field")

    def __init__(self, vars, field):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError("duplicate variable names")
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Ring is immutable")

    @property
    def arity(self):
        return len(self.vars)

    def index(self, name):
        return self.vars.index(name)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.vars == other.vars
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.vars, self.field))

    def __repr__(self):
        return f"Ring({list(self.vars)}, {self.field!r})"


class Poly:
    """Immutable multivariate polynomial with canonical lex term order."""

    __slots__ = ("ring", "terms", "_lt_cache")

    def __init__(self, ring, terms, _canonical=False):
        object.__setattr__(self, "ring", ring)
        if _canonical:
            object.__setattr__(self, "terms", terms)
        else:
            acc = {}
            for mono, coeff in terms:
                mono = tuple(int(e) for e in mono)
                if len(mono) != ring.arity or any(e < 0 for e in mono):
                    raise ValueError(f"bad exponent vector {mono}")
                c = ring.field.coerce(coeff)
                if mono in acc:
                    acc[mono] = acc[mono] + c
                else:
                    acc[mono] = c
            cleaned = tuple(
                (m, acc[m]) for m in sorted(acc, reverse=True) if acc[m]
            )
            object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "_lt_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, (), _canonical=True)

    @classmethod
    def constant(cls, ring, c):
        c = ring.field.coerce(c)
        if not c:
            return cls.zero(ring)
        return cls(ring, (((0,) * ring.arity, c),), _canonical=True)

    @classmethod
    def one(cls, ring):
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring, which):
        i = which if isinstance(which, int) else ring.index(which)
        mono = tuple(1 if j == i else 0 for j in range(ring.arity))
        return cls(ring, ((mono, ring.field.one()),), _canonical=True)

    @classmethod
    def from_dict(cls, ring, d):
        return cls(ring, list(d.items()))

    # -- structure ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (
            len(self.terms) == 1 and not any(self.terms[0][0])
        )

    def constant_value(self):
        if not self.terms:
            return self.ring.field.zero()
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms[0][1]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(mono_degree(m) for m, _ in self.terms)

    def support(self):
        """Indices of variables that actually occur."""
        seen = set()
        for m, _ in self.terms:
            for i, e in enumerate(m):
                if e:
                    seen.add(i)
        return seen

    def leading_term(self, order="lex"):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        cached = self._lt_cache.get(order)
        if cached is None:
            if order == "lex":
                cached = self.terms[0]
            else:
                key = monomial_key(order)
                cached = max(self.terms, key=lambda t: key(t[0]))
            self._lt_cache[order] = cached
        return cached

    def leading_monomial(self, order="lex"):
        return self.leading_term(order)[0]

    def leading_coeff(self, order="lex"):
        return self.leading_term(order)[1]

    def multideg(self, order="lex"):
        return self.leading_monomial(order)

    def monic(self, order="lex"):
        if not self.terms:
            return self
        lc = self.leading_coeff(order)
        if lc == 1:
            return self
        inv = self.ring.field.one() / lc
        return Poly(
            self.ring,
            tuple((m, c * inv) for m, c in self.terms),
            _canonical=True,
        )

    # -- arithmetic -----------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.ring, other)
        self._check_ring(other)
        acc = dict(self.terms)
        for m, c in other.terms:
            if m in acc:
                s = acc[m] + c
                if s:
                    acc[m] = s
                else:
                    del acc[m]
            else:
                acc[m] = c
        return Poly(
            self.ring,
            tuple((m, acc[m]) for m in sorted(acc, reverse=True)),
            _canonical=True,
        )

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Poly(
            self.ring, tuple((m, -c) for m, c in self.terms), _canonical=True
        )

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.ring, other)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field.coerce(other)
            if not c:
                return Poly.zero(self.ring)
            return Poly(
                self.ring,
                tuple((m, k * c) for m, k in self.terms),
                _canonical=True,
            )
        self._check_ring(other)
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                if m in acc:
                    acc[m] = acc[m] + c1 * c2
                else:
                    acc[m] = c1 * c2
        return Poly(
            self.ring,
            tuple((m, acc[m]) for m in sorted(acc, reverse=True) if acc[m]),
            _canonical=True,
        )

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a non-negative int")
        result = Poly.one(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, mono, coeff):
        """Multiply by a single term; used heavily by division."""
        coeff = self.ring.field.coerce(coeff)
        if not coeff:
            return Poly.zero(self.ring)
        return Poly(
            self.ring,
            tuple((mono_mul(m, mono), c * coeff) for m, c in self.terms),
            _canonical=True,
        )

    # -- evaluation -----------------------------------------------------------

    def eval_exact(self, point):
        """Exact evaluation; point entries may live in a larger field."""
        if len(point) != self.ring.arity:
            raise ValueError("point arity mismatch")
        if all(isinstance(x, (int, Fraction)) for x in point):
            return self._eval_rational(point)
        total = 0
        for m, c in self.terms:
            acc = c
            for i, e in enumerate(m):
                if e:
                    acc = acc * point[i] ** e
            total = total + acc
        return total

    def _eval_rational(self, point):
        # rational points keep monomial values in Q, so each term costs
        # one scalar multiply instead of a full field multiplication
        powers = [{0: Fraction(1)} for _ in point]
        total = None
        for m, c in self.terms:
            mono = Fraction(1)
            for i, e in enumerate(m):
                if e:
                    tab = powers[i]
                    if e not in tab:
                        tab[e] = Fraction(point[i]) ** e
                    mono *= tab[e]
            if isinstance(c, CycloNum):
                val = CycloNum._raw(c.n, tuple(mono * q for q in c.coeffs))
            else:
                val = c * mono
            total = val if total is None else total + val
        if total is None:
            return self.ring.field.zero()
        return total

    # -- comparisons and hashing ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if self.is_constant():
                try:
                    return self.constant_value() == self.ring.field.coerce(other)
                except (TypeError, ValueError):
                    return NotImplemented
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        return hash((self.ring, self.terms))

    # -- rendering --------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        parts = []
        for m, c in self.terms:
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.ring.vars[i])
                elif e > 1:
                    factors.append(f"{self.ring.vars[i]}^{e}")
            body = "*".join(factors)
            cs = field.render(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if body:
                if cs == "1" and "@" not in cs:
                    text = body
                else:
                    text = f"({cs})*{body}"
            else:
                text = cs if ("/" not in cs and "@" not in cs) else f"({cs})"
            if not parts:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append((" - " if neg else " + ") + text)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self})"

    # -- serialization ------------------------------------------------------------

    def to_json(self):
        return {
            "vars": list(self.ring.vars),
            "field": self.ring.field.to_json(),
            "terms": [
                {"c": self.ring.field.render(c), "e": list(m)}
                for m, c in self.terms
            ],
        }

    def terms_to_json(self):
        """Just the term list; ring data comes from the enclosing object."""
        return [
            {"c": self.ring.field.render(c), "e": list(m)}
            for m, c in self.terms
        ]

    @classmethod
    def from_json(cls, obj, ring=None):
        if ring is None:
            ring = Ring(tuple(obj["vars"]), field_from_json(obj["field"]))
        terms = [
            (tuple(t["e"]), ring.field.parse(t["c"])) for t in obj["terms"]
        ]
        return cls(ring, terms)

    @classmethod
    def terms_from_json(cls, term_list, ring):
        terms = [(tuple(t["e"]), ring.field.parse(t["c"])) for t in term_list]
        return cls(ring, terms)

    def with_field(self, field):
        """Coerce every coefficient into another coefficient field."""
        ring = Ring(self.ring.vars, field)
        return Poly(ring, [(m, field.coerce(_downcast(c))) for m, c in self.terms])


def _downcast(c):
    # CycloNum with rational value passes through Fraction so it can be
    # coerced into any target field
    if isinstance(c, CycloNum) and c.is_rational():
        return c.rational_part()
    return c


# ---------------------------------------------------------------------------
# division and S-polynomials
# ---------------------------------------------------------------------------

def divide(f, divisors, order="lex"):
    """Multivariate division with quotients.

    Returns (quotients, remainder) with
    f = sum(q_i * divisors_i) + remainder and no remainder term
    divisible by any divisor leading monomial.
    """
    divisors = list(divisors)
    if not divisors:
        raise ValueError("need at least one divisor")
    for g in divisors:
        if g.is_zero():
            raise ZeroDivisionError("zero divisor in division algorithm")
        if g.ring != f.ring:
            raise ValueError("ring mismatch in division")
    key = monomial_key(order)
    heads = [(g.leading_monomial(order), g.leading_coeff(order)) for g in divisors]
    quots = [dict() for _ in divisors]
    rem = {}
    p = dict(f.terms)
    while p:
        lm = max(p, key=key)
        lc = p.pop(lm)
        for i, (gm, gc) in enumerate(heads):
            if mono_divides(gm, lm):
                qm = mono_div(lm, gm)
                qc = lc / gc
                q = quots[i]
                q[qm] = q.get(qm, f.ring.field.zero()) + qc
                for m, c in divisors[i].terms:
                    if m == gm:
                        continue
                    mm = mono_mul(qm, m)
                    s = p.get(mm)
                    if s is None:
                        s = -qc * c
                    else:
                        s = s - qc * c
                    if s:
                        p[mm] = s
                    elif mm in p:
                        del p[mm]
                break
        else:
            rem[lm] = lc
    ring = f.ring
    qpolys = [
        Poly(
            ring,
            tuple((m, q[m]) for m in sorted(q, reverse=True) if q[m]),
            _canonical=True,
        )
        for q in quots
    ]
    rpoly = Poly(
        ring, tuple((m, rem[m]) for m in sorted(rem, reverse=True)), _canonical=True
    )
    return qpolys, rpoly


def reduce_poly(f, divisors, order="lex"):
    """Remainder of f on division by divisors; no quotient bookkeeping."""
    divisors = [g for g in divisors if not g.is_zero()]
    if not divisors:
        return f
    key = monomial_key(order)
    heads = [(g.leading_monomial(order), g.leading_coeff(order)) for g in divisors]
    rem = {}
    p = dict(f.terms)
    while p:
        lm = max(p, key=key)
        lc = p.pop(lm)
        for i, (gm, gc) in enumerate(heads):
            if mono_divides(gm, lm):
                qm = mono_div(lm, gm)
                qc = lc / gc
                for m, c in divisors[i].terms:
                    if m == gm:
                        continue
                    mm = mono_mul(qm, m)
                    s = p.get(mm)
                    if s is None:
                        s = -qc * c
                    else:
                        s = s - qc * c
                    if s:
                        p[mm] = s
                    elif mm in p:
                        del p[mm]
                break
        else:
            rem[lm] = lc
    return Poly(
        f.ring, tuple((m, rem[m]) for m in sorted(rem, reverse=True)), _canonical=True
    )


def s_polynomial(p, q, order="lex"):
    """S(p, q) = (L/LT(p)) p - (L/LT(q)) q with L = lcm of the leading monomials."""
    if p.ring != q.ring:
        raise ValueError("ring mismatch in s_polynomial")
    if p.is_zero() or q.is_zero():
        raise ValueError("s_polynomial of a zero polynomial")
    pm, pc = p.leading_term(order)
    qm, qc = q.leading_term(order)
    L = mono_lcm(pm, qm)
    one = p.ring.field.one()
    left = p.mul_term(mono_div(L, pm), one / pc)
    right = q.mul_term(mono_div(L, qm), one / qc)
    return left - right
