"""Exact scalars: arbitrary-precision rationals and cyclotomic numbers.

Rationals are stdlib ``fractions.Fraction``. A :class:`CycloNum` is an
element of the cyclotomic field Q(zeta_n), stored on the power basis
1, z, ..., z^(phi(n)-1) and kept reduced modulo the n-th cyclotomic
polynomial, so two elements are equal iff their coefficient vectors are
identical. All arithmetic is exact; the only approximate operation is
:func:`cyclo_embed`, which maps into mpmath complex numbers at a caller
chosen binary precision.

Exact values of cos(2*pi*k/d) and sin(2*pi*k/d) live in Q(zeta_n) with
n = lcm(4, d); the factor 4 makes sure the imaginary unit is available
so that sin can be written as (z^e - z^-e) * (-i) / 2.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

import mpmath

Rational = Fraction

__all__ = [
    "Rational",
    "CycloNum",
    "QQ",
    "CycloField",
    "field_from_json",
    "euler_phi",
    "cyclotomic_poly",
    "cyclo_root_of_unity",
    "cyclo_cos_sin",
    "cyclo_embed",
    "rational_embed",
    "upoly_trim",
    "upoly_add",
    "upoly_sub",
    "upoly_mul",
    "upoly_divmod",
    "upoly_deriv",
    "upoly_gcd",
    "upoly_monic",
    "upoly_eval",
]


# ---------------------------------------------------------------------------
# univariate polynomials over Q, as coefficient lists (low degree first)
# ---------------------------------------------------------------------------

def upoly_trim(cs):
    """Drop trailing zero coefficients."""
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def upoly_add(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return upoly_trim(out)


def upoly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return upoly_trim(out)


def upoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return upoly_trim(out)


def upoly_divmod(a, b):
    """Quotient and remainder of a by b over Q. b must be nonzero."""
    b = upoly_trim(b)
    if not b:
        raise ZeroDivisionError("univariate division by zero polynomial")
    a = [Fraction(c) for c in a]
    a = upoly_trim(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(a) >= len(b):
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, cb in enumerate(b):
            a[k + i] -= c * cb
        a = upoly_trim(a)
    return upoly_trim(q), a


def upoly_deriv(a):
    return upoly_trim([Fraction(i) * c for i, c in enumerate(a)][1:])


def upoly_monic(a):
    a = upoly_trim(a)
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def upoly_gcd(a, b):
    """Monic gcd over Q by the Euclidean algorithm."""
    a = upoly_trim(a)
    b = upoly_trim(b)
    while b:
        _, r = upoly_divmod(a, b)
        a, b = b, r
    return upoly_monic(a)


def upoly_eval(a, x):
    acc = 0
    for c in reversed(list(a)):
        acc = acc * x + c
    return acc


def _upoly_ext_gcd(a, b):
    # returns (g, u, v) with u*a + v*b = g, g monic
    r0, r1 = upoly_trim(a), upoly_trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, upoly_sub(s0, upoly_mul(q, s1))
        t0, t1 = t1, upoly_sub(t0, upoly_mul(q, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    inv = 1 / lead
    return ([c * inv for c in r0], [c * inv for c in s0], [c * inv for c in t0])


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------

def euler_phi(n):
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _zpoly_exact_div(num, den):
    # integer synthetic division by a monic divisor; remainder must vanish
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for i, cd in enumerate(den):
                num[k + i] -= c * cd
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact division in cyclotomic construction")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("cyclotomic_poly needs n >= 1")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _zpoly_exact_div(num, cyclotomic_poly(d))
    return tuple(num)


@lru_cache(maxsize=None)
class _CycloContext:
    """Shared per-conductor data: phi(n), Phi_n, and power reduction rows."""

    def __init__(self, n):
        self.n = n
        self.phi = euler_phi(n)
        self.minpoly = tuple(Fraction(c) for c in cyclotomic_poly(n))
        # rows[e] = coefficients of z^e reduced mod Phi_n, for every power
        # that can show up in a product of two reduced elements
        top = max(n, 2 * self.phi - 1)
        rows = []
        row = [Fraction(0)] * self.phi
        if self.phi:
            row[0] = Fraction(1)
        rows.append(tuple(row))
        for _ in range(1, top):
            shifted = [Fraction(0)] + list(row)
            overflow = shifted.pop()
            if overflow:
                # Phi_n is monic: z^phi = -(lower coefficients)
                for i in range(self.phi):
                    shifted[i] -= overflow * self.minpoly[i]
            row = shifted
            rows.append(tuple(row))
        self.rows = tuple(rows)

    def reduce_long(self, cs):
        """Reduce a raw coefficient list (any length) mod Phi_n."""
        out = [Fraction(0)] * self.phi
        for e, c in enumerate(cs):
            if c:
                row = self.rows[e % self.n] if e >= len(self.rows) else self.rows[e]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return tuple(out)


@lru_cache(maxsize=None)
def _zeta_powers(n, precision):
    ctx = _CycloContext(n)
    with mpmath.workprec(precision + 16):
        zeta = mpmath.expjpi(mpmath.mpf(2) / n)
        return tuple(zeta ** k for k in range(ctx.phi))


def rational_embed(q, precision=53):
    """A Fraction as an mpmath float at the given binary precision."""
    with mpmath.workprec(precision):
        return mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)


class CycloNum:
    """An element of Q(zeta_n) on the reduced power basis.

    Mixed arithmetic with ``int`` and ``Fraction`` is supported; two
    CycloNum operands must share the same conductor.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs):
        ctx = _CycloContext(n)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != ctx.phi:
            raise ValueError(
                f"Q(zeta_{n}) elements need {ctx.phi} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    @classmethod
    def from_rational(cls, n, q):
        ctx = _CycloContext(n)
        coeffs = [Fraction(0)] * ctx.phi
        coeffs[0] = Fraction(q)
        return cls(n, coeffs)

    @classmethod
    def _raw(cls, n, long_coeffs):
        ctx = _CycloContext(n)
        return cls(n, ctx.reduce_long(long_coeffs))

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_part(self):
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coeffs[0]

    def conjugate(self):
        """Complex conjugation, z -> z^(n-1)."""
        ctx = _CycloContext(self.n)
        out = [Fraction(0)] * ctx.phi
        for k, c in enumerate(self.coeffs):
            if c:
                row = ctx.rows[(self.n - k) % self.n]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycloNum(self.n, out)

    def is_real(self):
        return self == self.conjugate()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.n != self.n:
                raise ValueError(
                    f"conductor mismatch: {self.n} vs {other.n}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(self.n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloNum(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloNum(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            q = other.coeffs[0]
            return CycloNum(self.n, [c * q for c in self.coeffs])
        if self.is_rational():
            q = self.coeffs[0]
            return CycloNum(self.n, [c * q for c in other.coeffs])
        m = len(self.coeffs)
        long = [Fraction(0)] * (2 * m - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        long[i + j] += a * b
        return CycloNum._raw(self.n, long)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        if self.is_rational():
            return CycloNum.from_rational(self.n, 1 / self.coeffs[0])
        ctx = _CycloContext(self.n)
        g, u, _ = _upoly_ext_gcd(list(self.coeffs), list(ctx.minpoly))
        # Phi_n is irreducible over Q, so the gcd with any nonzero
        # reduced element is 1
        if g != [Fraction(1)]:
            raise ArithmeticError("cyclotomic inverse failed")
        return CycloNum._raw(self.n, u)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNum.from_rational(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycloNum):
            return self.n == other.n and self.coeffs == other.coeffs
        return NotImplemented

    def __bool__(self):
        return not self.is_zero()

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"CycloNum({self.n}, {list(self.coeffs)})"

    def __str__(self):
        return cyclo_to_str(self)


def cyclo_root_of_unity(n, k):
    """zeta_n^k as a CycloNum (k may be any integer)."""
    ctx = _CycloContext(n)
    e = k % n
    row = ctx.rows[e]
    return CycloNum(n, row)


def cyclo_cos_sin(d, b, j):
    """Exact cos(2*pi*b*j/d) and sin(2*pi*b*j/d) in Q(zeta_lcm(4,d))."""
    if d < 1:
        raise ValueError("d must be positive")
    n = lcm(4, d)
    e = (n // d) * ((b * j) % d)
    z = cyclo_root_of_unity(n, e)
    zbar = cyclo_root_of_unity(n, -e)
    imag = cyclo_root_of_unity(n, n // 4)
    half = Fraction(1, 2)
    cos = (z + zbar) * half
    sin = (z - zbar) * (-imag) * half
    return cos, sin


def cyclo_embed(x, precision=53):
    """Numeric value of a CycloNum as an mpmath mpc.

    The result carries roughly ``precision`` correct bits; computation
    runs with 16 guard bits.
    """
    powers = _zeta_powers(x.n, precision)
    with mpmath.workprec(precision + 16):
        acc = mpmath.mpc(0)
        for c, p in zip(x.coeffs, powers):
            if c:
                acc += (mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)) * p
        return mpmath.mpc(acc)


# ---------------------------------------------------------------------------
# canonical text form
# ---------------------------------------------------------------------------

def _rat_body(q):
    return str(q)


def cyclo_to_str(x):
    """Render like ``(1/2)*z^2 - 1 @ n=12``; parsed back by cyclo_from_str."""
    parts = []
    for k in range(len(x.coeffs) - 1, -1, -1):
        c = x.coeffs[k]
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = _rat_body(mag)
        else:
            zpow = "z" if k == 1 else f"z^{k}"
            body = zpow if mag == 1 else f"({_rat_body(mag)})*{zpow}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    poly = "".join(parts) if parts else "0"
    return f"{poly} @ n={x.n}"


def cyclo_from_str(s):
    import re

    text, _, tail = s.rpartition("@")
    text = text.strip()
    tail = tail.strip()
    m = re.fullmatch(r"n=(\d+)", tail)
    if not m:
        raise ValueError(f"missing conductor annotation in {s!r}")
    n = int(m.group(1))
    ctx = _CycloContext(n)
    coeffs = [Fraction(0)] * ctx.phi
    if text == "0":
        return CycloNum(n, coeffs)
    # normalize separators, keep a possible leading minus attached
    text = text.replace(" - ", " + -")
    term_re = re.compile(
        r"^(-)?(?:\((-?\d+(?:/\d+)?)\)\*|(-?\d+(?:/\d+)?)(?=$))?(z(?:\^(\d+))?)?$"
    )
    for raw in text.split(" + "):
        raw = raw.strip()
        m = term_re.fullmatch(raw)
        if not m or (m.group(3) is None and m.group(4) is None):
            raise ValueError(f"bad cyclotomic term {raw!r} in {s!r}")
        sign = -1 if m.group(1) else 1
        if m.group(4):
            coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            power = int(m.group(5)) if m.group(5) else 1
        else:
            coeff = Fraction(m.group(3))
            power = 0
        if power >= ctx.phi:
            raise ValueError(f"power {power} not reduced for n={n}")
        coeffs[power] += sign * coeff
    return CycloNum(n, coeffs)


# ---------------------------------------------------------------------------
# coefficient field descriptors
# ---------------------------------------------------------------------------

class _RationalField:
    """The field Q; scalars are Fraction."""

    name = "Q"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, CycloNum):
            return x.rational_part()
        raise TypeError(f"cannot coerce {x!r} into Q")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def render(self, x):
        return str(x)

    def parse(self, s):
        return Fraction(s)

    def to_json(self):
        return "Q"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, _RationalField)

    def __hash__(self):
        return hash("QQ")


class CycloField:
    """The field Q(zeta_n); scalars are CycloNum with conductor n."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("conductor must be >= 1")
        self.n = n

    @property
    def name(self):
        return f"Q(zeta_{self.n})"

    def coerce(self, x):
        if isinstance(x, CycloNum):
            if x.n != self.n:
                raise ValueError(f"conductor mismatch: {x.n} vs {self.n}")
            return x
        if isinstance(x, (int, Fraction)):
            return CycloNum.from_rational(self.n, x)
        raise TypeError(f"cannot coerce {x!r} into Q(zeta_{self.n})")

    def zero(self):
        return CycloNum.from_rational(self.n, 0)

    def one(self):
        return CycloNum.from_rational(self.n, 1)

    def render(self, x):
        return cyclo_to_str(x)

    def parse(self, s):
        x = cyclo_from_str(s)
        if x.n != self.n:
            raise ValueError(f"conductor mismatch: {x.n} vs {self.n}")
        return x

    def to_json(self):
        return {"cyclotomic": self.n}

    def __repr__(self):
        return f"CycloField({self.n})"

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.n == self.n

    def __hash__(self):
        return hash(("cyclo", self.n))


QQ = _RationalField()


def field_from_json(tag):
    if tag == "Q":
        return QQ
    if isinstance(tag, dict) and set(tag) == {"cyclotomic"}:
        return CycloField(int(tag["cyclotomic"]))
    raise ValueError(f"unknown field tag {tag!r}")
