"""Polynomial systems whose real solutions are equiangular line sets.

Three families are generated, all with exact coefficients.

complex_full
    d*d unit vectors in C^d written as A_jk + i*B_jk, one equation
    |<u_j, u_l>|^2 = 1/(d+1) per unordered pair plus norm equations,
    in 2*d^3 real variables. Huge, but fully general.

wh_fiducial
    A single fiducial vector v = (x_0 + i*x_d, ..., x_(d-1) + i*x_(2d-1))
    whose Weyl-Heisenberg orbit is required to be equiangular. The
    displacement V^a U^b acts by (V^a U^b v)_k = w^(b(a+k)) v_(a+k mod d)
    with w = exp(2*pi*i/d). Writing the squared overlap of v with
    V^a U^b v as an exact polynomial gives

        p_ab = CC_ab^2 + DD_ab^2,
        CC_ab = sum_j (cos(2 pi b j / d) C_j - sin(2 pi b j / d) D_j),
        DD_ab = sum_j (sin(2 pi b j / d) C_j + cos(2 pi b j / d) D_j),
        C_j = A_j A_(j-a) + B_j B_(j-a),
        D_j = A_(j-a) B_j - A_j B_(j-a),    indices mod d.

    Equations: p_00 = 1, p_ab = 1/(d+1) otherwise. Coefficients live in
    Q(zeta_lcm(4,d)) and are moved down to Q when they are all rational.
    Coinciding equations are merged and the classes recorded. The phase
    fix appends the polynomial B_0 (the variable x_d), pinning the
    global phase so the first coordinate of v is real.

real_lines
    N unit vectors in R^d with |<u_j, u_l>| = alpha: equations
    C_jl^2 = alpha^2 off the diagonal and C_jl^2 = 1 on it, where
    C_jl = sum_k u_jk u_lk. With a sign matrix the stronger linear
    variant C_jl = s_jl * alpha is emitted instead. A symbolic alpha
    becomes the last ring variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import mpmath

from .exact import QQ, CycloField, cyclo_cos_sin
from .polyring import Poly, Ring

__all__ = [
    "WeylIndex",
    "PolySystem",
    "gen_complex_full",
    "gen_wh_system",
    "gen_real_system",
    "apply_weyl",
    "fiducial_from_coords",
]


@dataclass(frozen=True)
class WeylIndex:
    """Displacement exponents (a, b) with 0 <= a, b < d."""

    a: int
    b: int

    def reduced(self, d):
        return WeylIndex(self.a % d, self.b % d)


@dataclass(frozen=True)
class PolySystem:
    kind: str
    d: int
    n_lines: int
    ring: Ring
    equations: tuple
    labels: tuple
    rhs: dict
    merged: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.equations) != len(self.labels):
            raise ValueError("labels and equations must align")

    def to_json(self):
        meta = {
            "rhs": dict(self.rhs),
            "merged_classes": {k: [list(ab) for ab in v] for k, v in self.merged.items()},
        }
        meta.update(self.extra)
        return {
            "format": "polysystem",
            "kind": self.kind,
            "d": self.d,
            "n_lines": self.n_lines,
            "vars": list(self.ring.vars),
            "field": self.ring.field.to_json(),
            "labels": list(self.labels),
            "equations": [eq.terms_to_json() for eq in self.equations],
            "metadata": meta,
        }

    @classmethod
    def from_json(cls, obj):
        from .exact import field_from_json

        if obj.get("format") != "polysystem":
            raise ValueError("not a polysystem file")
        ring = Ring(tuple(obj["vars"]), field_from_json(obj["field"]))
        eqs = tuple(
            Poly.terms_from_json(t, ring) for t in obj["equations"]
        )
        meta = dict(obj.get("metadata", {}))
        rhs = meta.pop("rhs", {})
        merged = {
            k: tuple(tuple(ab) for ab in v)
            for k, v in meta.pop("merged_classes", {}).items()
        }
        return cls(
            kind=obj["kind"],
            d=obj["d"],
            n_lines=obj["n_lines"],
            ring=ring,
            equations=eqs,
            labels=tuple(obj["labels"]),
            rhs=rhs,
            merged=merged,
            extra=meta,
        )


# ---------------------------------------------------------------------------
# complex, all lines at once
# ---------------------------------------------------------------------------

def gen_complex_full(d):
    """Defining system for d^2 equiangular unit vectors in C^d."""
    if d < 1:
        raise ValueError("d must be positive")
    nvec = d * d
    names = [f"A_{j}_{k}" for j in range(1, nvec + 1) for k in range(1, d + 1)]
    names += [f"B_{j}_{k}" for j in range(1, nvec + 1) for k in range(1, d + 1)]
    ring = Ring(tuple(names), QQ)

    def A(j, k):
        return Poly.variable(ring, (j - 1) * d + (k - 1))

    def B(j, k):
        return Poly.variable(ring, nvec * d + (j - 1) * d + (k - 1))

    equations = []
    labels = []
    rhs = {}
    offdiag = Fraction(1, d + 1)
    for j in range(1, nvec + 1):
        for l in range(j, nvec + 1):
            C = Poly.zero(ring)
            D = Poly.zero(ring)
            for k in range(1, d + 1):
                C = C + A(j, k) * A(l, k) + B(j, k) * B(l, k)
                D = D + B(j, k) * A(l, k) - A(j, k) * B(l, k)
            p = C * C + D * D
            label = f"p_{j}_{l}"
            if j == l:
                equations.append(p - 1)
                rhs[label] = "1"
            else:
                equations.append(p - offdiag)
                rhs[label] = str(offdiag)
            labels.append(label)
    return PolySystem(
        kind="complex_full",
        d=d,
        n_lines=nvec,
        ring=ring,
        equations=tuple(equations),
        labels=tuple(labels),
        rhs=rhs,
    )


# ---------------------------------------------------------------------------
# Weyl-Heisenberg covariant case
# ---------------------------------------------------------------------------

def gen_wh_system(d, phase_fix=True):
    """Fiducial vector system for a Weyl-Heisenberg covariant line set."""
    if d < 1:
        raise ValueError("d must be positive")
    n = lcm(4, d)
    cyclo = CycloField(n)
    ring = Ring(tuple(f"x{i}" for i in range(2 * d)), cyclo)
    A = [Poly.variable(ring, j) for j in range(d)]
    B = [Poly.variable(ring, d + j) for j in range(d)]

    p = {}
    for a in range(d):
        C = [A[j] * A[j - a] + B[j] * B[j - a] for j in range(d)]
        D = [A[j - a] * B[j] - A[j] * B[j - a] for j in range(d)]
        for b in range(d):
            CC = Poly.zero(ring)
            DD = Poly.zero(ring)
            for j in range(d):
                cos, sin = cyclo_cos_sin(d, b, j)
                CC = CC + cos * C[j] - sin * D[j]
                DD = DD + sin * C[j] + cos * D[j]
            p[(a, b)] = CC * CC + DD * DD

    if all(
        coeff.is_rational() for q in p.values() for _, coeff in q.terms
    ):
        ring = Ring(ring.vars, QQ)
        p = {ab: q.with_field(QQ) for ab, q in p.items()}

    equations = []
    labels = []
    rhs = {}
    merged = {}
    if phase_fix:
        equations.append(Poly.variable(ring, d))
        labels.append("phase")
        rhs["phase"] = "0"
    equations.append(p[(0, 0)] - 1)
    labels.append("p_0_0")
    rhs["p_0_0"] = "1"
    merged["p_0_0"] = ((0, 0),)
    offdiag = Fraction(1, d + 1)
    seen = {}
    for a in range(d):
        for b in range(d):
            if (a, b) == (0, 0):
                continue
            q = p[(a, b)]
            if q in seen:
                merged[seen[q]] = merged[seen[q]] + ((a, b),)
                continue
            label = f"p_{a}_{b}"
            seen[q] = label
            merged[label] = ((a, b),)
            equations.append(q - offdiag)
            labels.append(label)
            rhs[label] = str(offdiag)
    return PolySystem(
        kind="wh_fiducial",
        d=d,
        n_lines=d * d,
        ring=ring,
        equations=tuple(equations),
        labels=tuple(labels),
        rhs=rhs,
        merged=merged,
        extra={"phase_fix": bool(phase_fix)},
    )


def apply_weyl(v, idx):
    """Numeric displacement V^a U^b of a vector, at current mp precision.

    Accepts a WeylIndex or an (a, b) tuple; entries may be any complex
    type mpmath understands.
    """
    if isinstance(idx, WeylIndex):
        a, b = idx.a, idx.b
    else:
        a, b = idx
    d = len(v)
    a %= d
    b %= d
    out = []
    for k in range(d):
        e = (b * (a + k)) % d
        phase = mpmath.expjpi(mpmath.mpf(2 * e) / d) if e else mpmath.mpf(1)
        out.append(phase * v[(a + k) % d])
    return out


def fiducial_from_coords(coords):
    """Coordinate vector (x_0..x_(2d-1)) -> complex vector in C^d."""
    if len(coords) % 2:
        raise ValueError("need an even number of coordinates")
    d = len(coords) // 2
    return [
        mpmath.mpc(coords[j]) + mpmath.mpc(0, 1) * mpmath.mpc(coords[d + j])
        for j in range(d)
    ]


# ---------------------------------------------------------------------------
# real equiangular lines
# ---------------------------------------------------------------------------

def _validate_signs(signs, N):
    if len(signs) != N or any(len(row) != N for row in signs):
        raise ValueError("sign matrix must be N x N")
    for j in range(N):
        if signs[j][j] != 0:
            raise ValueError("sign matrix diagonal must be zero")
        for l in range(N):
            if j != l and signs[j][l] not in (1, -1):
                raise ValueError("off-diagonal signs must be +1 or -1")
            if signs[j][l] != signs[l][j]:
                raise ValueError("sign matrix must be symmetric")


def gen_real_system(d, N, alpha=None, signs=None):
    """System for N unit vectors in R^d pairwise at angle arccos(alpha).

    alpha may be a Fraction (fixed common angle) or None, in which case
    a variable named alpha is appended to the ring. With ``signs`` the
    sign-resolved linear variant replaces the squared equations.
    """
    if d < 1 or N < 1:
        raise ValueError("d and N must be positive")
    if signs is not None:
        _validate_signs(signs, N)
    names = [f"u_{j}_{k}" for j in range(1, N + 1) for k in range(1, d + 1)]
    symbolic = alpha is None
    if symbolic:
        names.append("alpha")
    else:
        alpha = Fraction(alpha)
    ring = Ring(tuple(names), QQ)

    def u(j, k):
        return Poly.variable(ring, (j - 1) * d + (k - 1))

    alpha_poly = Poly.variable(ring, N * d) if symbolic else None
    equations = []
    labels = []
    rhs = {}
    for j in range(1, N + 1):
        for l in range(j, N + 1):
            C = Poly.zero(ring)
            for k in range(1, d + 1):
                C = C + u(j, k) * u(l, k)
            label = f"p_{j}_{l}"
            labels.append(label)
            if signs is None:
                if j == l:
                    equations.append(C * C - 1)
                    rhs[label] = "1"
                elif symbolic:
                    equations.append(C * C - alpha_poly * alpha_poly)
                    rhs[label] = "alpha^2"
                else:
                    equations.append(C * C - alpha * alpha)
                    rhs[label] = str(alpha * alpha)
            else:
                if j == l:
                    equations.append(C - 1)
                    rhs[label] = "1"
                else:
                    s = signs[j - 1][l - 1]
                    if symbolic:
                        equations.append(C - s * alpha_poly)
                        rhs[label] = f"{s}*alpha"
                    else:
                        equations.append(C - s * alpha)
                        rhs[label] = str(s * alpha)
    extra = {"variant": "squared" if signs is None else "sign_resolved"}
    if not symbolic:
        extra["alpha"] = str(alpha)
    return PolySystem(
        kind="real_lines",
        d=d,
        n_lines=N,
        ring=ring,
        equations=tuple(equations),
        labels=tuple(labels),
        rhs=rhs,
        extra=extra,
    )
