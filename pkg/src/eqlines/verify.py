"""Verification suite for equiangular line candidates.

Complex side: overlap extraction against the Weyl-Heisenberg orbit,
the squared-modulus pattern check for fiducials and full vector
families, and algebraic-unit certification of overlap minimal
polynomials (monic integer and reciprocal, or x +- 1).

Real side: exact symbolic analysis of the Gram matrix I + alpha*S of a
sign pattern S. The determinant is computed fraction-free over Q[alpha]
so root multiplicities come from exact gcd computations, not numerics;
numerics enter only when locating the real roots of each squarefree
factor. Spectral reconstruction then rebuilds explicit unit vectors
from a numeric Gram matrix and confirms the round trip.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

import mpmath
import numpy as np

from .exact import (
    QQ,
    upoly_deriv,
    upoly_divmod,
    upoly_gcd,
    upoly_monic,
    upoly_mul,
    upoly_sub,
    upoly_trim,
)
from .polyring import Poly, Ring
from .sicgen import apply_weyl
from .solver import _roots_numeric

__all__ = [
    "OverlapReport",
    "SeidelSpec",
    "VerificationError",
    "SpectralError",
    "verify_fiducial",
    "verify_equiangular_complex",
    "reciprocity_check",
    "unit_certify",
    "squarefree_decomposition",
    "gram_analysis",
    "spectral_reconstruct",
    "verify_equiangular_real",
    "seidel_hexagon",
    "seidel_icosahedron",
    "hexagon_lines",
    "icosahedron_lines",
]


class VerificationError(ValueError):
    pass


class SpectralError(VerificationError):
    pass


def _dps(prec):
    return int(prec * 0.30103) + 6


@dataclass
class OverlapReport:
    """Normalized overlaps sqrt(d+1)*<v_ab, v> for (a,b) != (0,0).

    Each entry records the overlap, how far its modulus sits from 1,
    and its phase theta in (-pi, pi].
    """

    d: int
    entries: dict

    def to_json(self):
        dps = 40
        out = {}
        for (a, b), e in sorted(self.entries.items()):
            out[f"{a},{b}"] = {
                "overlap": [
                    mpmath.nstr(e["overlap"].real, dps),
                    mpmath.nstr(e["overlap"].imag, dps),
                ],
                "modulus_error": mpmath.nstr(e["modulus_error"], 8),
                "theta": mpmath.nstr(e["theta"], dps),
            }
        return {"d": self.d, "entries": out}


@dataclass(frozen=True)
class SeidelSpec:
    """Sign pattern of a real equiangular line set.

    signs is symmetric with zero diagonal and +-1 off the diagonal;
    the Gram matrix of the lines at angle alpha is I + alpha*signs.
    """

    N: int
    signs: tuple

    def __init__(self, signs):
        rows = tuple(tuple(int(x) for x in row) for row in signs)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise VerificationError("sign matrix must be square")
            if row[i] != 0:
                raise VerificationError("sign matrix diagonal must be zero")
            for j, x in enumerate(row):
                if i != j and x not in (-1, 1):
                    raise VerificationError(
                        "off-diagonal signs must be +1 or -1"
                    )
                if rows[j][i] != x:
                    raise VerificationError("sign matrix must be symmetric")
        object.__setattr__(self, "N", n)
        object.__setattr__(self, "signs", rows)

    def to_json(self):
        return {"signs": [list(r) for r in self.signs]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["signs"])


# ---------------------------------------------------------------------------
# complex side
# ---------------------------------------------------------------------------

def _as_mpc_vector(v):
    return [mpmath.mpc(x) for x in v]


def verify_fiducial(v, tol=1e-10, precision=128):
    """Check the constant-angle condition on the orbit of v.

    Normalizes v, forms every v_ab for (a,b) != (0,0), and tests
    |<v_ab, v>|^2 = 1/(d+1). Returns ok, the worst deviation, and an
    OverlapReport with all d^2 - 1 normalized overlaps.
    """
    with mpmath.workprec(precision):
        w = _as_mpc_vector(v)
        nrm = mpmath.sqrt(sum(abs(x) ** 2 for x in w))
        if nrm == 0:
            raise VerificationError("zero vector")
        w = [x / nrm for x in w]
        d = len(w)
        root = mpmath.sqrt(d + 1)
        target = mpmath.mpf(1) / (d + 1)
        entries = {}
        max_dev = mpmath.mpf(0)
        for a in range(d):
            for b in range(d):
                if a == 0 and b == 0:
                    continue
                vab = apply_weyl(w, (a, b))
                ip = sum(x * mpmath.conj(y) for x, y in zip(vab, w))
                overlap = root * ip
                mod_err = abs(abs(overlap) - 1)
                entries[(a, b)] = {
                    "overlap": overlap,
                    "modulus_error": mod_err,
                    "theta": mpmath.arg(overlap),
                }
                max_dev = max(max_dev, abs(abs(ip) ** 2 - target))
        report = OverlapReport(d, entries)
        return {"ok": max_dev <= tol, "max_dev": max_dev, "report": report}


def verify_equiangular_complex(vectors, tol=1e-10, precision=128):
    """Pairwise angle check on a family of d^2 unit vectors in C^d."""
    if not vectors:
        raise VerificationError("empty family")
    d = len(vectors[0])
    if len(vectors) != d * d:
        raise VerificationError(
            f"need {d * d} vectors of dimension {d}, got {len(vectors)}"
        )
    with mpmath.workprec(precision):
        vs = [_as_mpc_vector(v) for v in vectors]
        target = mpmath.mpf(1) / (d + 1)
        max_dev = mpmath.mpf(0)
        for j, vj in enumerate(vs):
            nrm2 = sum(abs(x) ** 2 for x in vj)
            max_dev = max(max_dev, abs(nrm2 - 1))
            for vl in vs[j + 1:]:
                ip = sum(x * mpmath.conj(y) for x, y in zip(vj, vl))
                max_dev = max(max_dev, abs(abs(ip) ** 2 - target))
        return {"ok": max_dev <= tol, "max_dev": max_dev}


def _univariate_coeffs(f):
    """Little-endian Fraction coefficients of a one-variable Poly."""
    if f.ring.arity != 1:
        raise VerificationError("univariate polynomial required")
    if f.is_zero():
        raise VerificationError("zero polynomial")
    deg = f.total_degree()
    cs = [Fraction(0)] * (deg + 1)
    for m, c in f.terms:
        cs[m[0]] = Fraction(c)
    return cs


def reciprocity_check(f):
    """Palindrome test: x^n f(1/x) = f(x), plus degree parity."""
    cs = _univariate_coeffs(f)
    return {
        "reciprocal": cs == cs[::-1],
        "even_degree": (len(cs) - 1) % 2 == 0,
    }


def unit_certify(f):
    """Certify that a unit-circle root of f is an algebraic unit.

    Accepts f that is monic with integer coefficients and either
    x +- 1 or reciprocal. The certificate is conditional on f being
    the root's minimal polynomial; irreducibility is not tested here.
    """
    cs = _univariate_coeffs(f)
    reasons = []
    if cs[-1] != 1:
        reasons.append("not monic")
    if any(c.denominator != 1 for c in cs):
        reasons.append("non-integer coefficients")
    linear_unit = cs in ([Fraction(1), Fraction(1)], [Fraction(-1), Fraction(1)])
    if not linear_unit and cs != cs[::-1]:
        reasons.append("not reciprocal and not x +- 1")
    return {"unit": not reasons, "reasons": reasons}


# ---------------------------------------------------------------------------
# real side
# ---------------------------------------------------------------------------

def squarefree_decomposition(f):
    """Yun decomposition of a little-endian Fraction coefficient list.

    Returns a list of (factor, multiplicity) with each factor monic
    squarefree, so that f = lc * prod factor^multiplicity.
    """
    f = upoly_trim(list(f))
    if len(f) <= 1:
        return []
    f = upoly_monic(f)
    df = upoly_deriv(f)
    g = upoly_gcd(f, df)
    w, r = upoly_divmod(f, g)
    assert not r
    y, r = upoly_divmod(df, g)
    assert not r
    z = upoly_sub(y, upoly_deriv(w))
    out = []
    i = 1
    while len(w) > 1:
        gi = upoly_gcd(w, z)
        if len(gi) > 1:
            out.append((gi, i))
        w, r = upoly_divmod(w, gi)
        assert not r
        y, r = upoly_divmod(z, gi)
        assert not r
        z = upoly_sub(y, upoly_deriv(w))
        i += 1
    return out


def _bareiss_det(matrix):
    """Exact determinant of a square matrix of Fraction coefficient
    lists, by fraction-free elimination over Q[alpha]."""
    m = [[upoly_trim(list(e)) for e in row] for row in matrix]
    n = len(m)
    sign = 1
    prev = [Fraction(1)]
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return [Fraction(0)]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = upoly_sub(
                    upoly_mul(m[i][j], m[k][k]),
                    upoly_mul(m[i][k], m[k][j]),
                )
                q, r = upoly_divmod(num, prev)
                assert not r
                m[i][j] = q
            m[i][k] = []
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return [sign * c for c in det] if sign < 0 else det


def gram_analysis(spec, d, precision=128, tol=1e-10):
    """Symbolic rank analysis of G(alpha) = I + alpha*signs.

    det_poly is exact over Q[alpha]. A root alpha is admissible when it
    is real with 0 < alpha < 1 and its multiplicity is at least N - d,
    the rank deficiency forced by embedding N lines in R^d. For each
    admissible root, odd_integer_flags holds whether 1/alpha is an odd
    integer when N > 2d, and None otherwise.
    """
    if spec.N <= d:
        raise VerificationError("need more lines than dimensions")
    n = spec.N
    matrix = [
        [
            [Fraction(1)] if i == j else [Fraction(0), Fraction(spec.signs[i][j])]
            for j in range(n)
        ]
        for i in range(n)
    ]
    det = _bareiss_det(matrix)
    ring = Ring(("alpha",), QQ)
    det_poly = Poly.from_dict(ring, {(k,): c for k, c in enumerate(det)})

    need = n - d
    admissible = []
    multiplicities = []
    flags = []
    with mpmath.workprec(precision):
        eps = mpmath.mpf(10) ** (-_dps(precision) // 2)
        for factor, mult in squarefree_decomposition(det):
            if mult < need:
                continue
            coeffs = [
                mpmath.mpf(c.numerator) / c.denominator
                for c in reversed(factor)
            ]
            for r in _roots_numeric(coeffs, precision):
                if abs(r.imag) > eps:
                    continue
                a = r.real
                if a <= eps or a >= 1 - eps:
                    continue
                admissible.append(a)
                multiplicities.append(mult)
                if n > 2 * d:
                    inv = 1 / a
                    near = mpmath.nint(inv)
                    flags.append(
                        bool(abs(inv - near) <= tol and int(near) % 2 == 1)
                    )
                else:
                    flags.append(None)
        order = sorted(range(len(admissible)), key=lambda i: admissible[i])
    return {
        "det_poly": det_poly,
        "admissible_alphas": [admissible[i] for i in order],
        "multiplicities": [multiplicities[i] for i in order],
        "odd_integer_flags": [flags[i] for i in order],
    }


def spectral_reconstruct(gram, d, tol=1e-10):
    """Rebuild N unit vectors in R^d from an N x N Gram matrix.

    Eigendecomposes, keeps the top d eigenpairs, and returns the
    columns of sqrt(Lambda) Q^T. Fails if the matrix has a negative
    eigenvalue below -tol or numeric rank above d.
    """
    g = np.asarray(gram, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise VerificationError("gram matrix must be square")
    if not np.allclose(g, g.T, atol=tol):
        raise VerificationError("gram matrix must be symmetric")
    n = g.shape[0]
    evals, evecs = np.linalg.eigh(g)
    if evals[0] < -tol:
        raise SpectralError(f"not positive semi-definite: {evals[0]:.3e}")
    rank = int(np.sum(evals > tol))
    if rank > d:
        raise SpectralError(f"numeric rank {rank} exceeds dimension {d}")
    top = evals[-d:]
    q = evecs[:, -d:]
    v = np.sqrt(np.clip(top, 0, None))[:, None] * q.T
    recon = v.T @ v
    recon_error = float(np.max(np.abs(recon - g)))
    if recon_error > tol:
        raise SpectralError(
            f"reconstruction error {recon_error:.3e} exceeds tolerance"
        )
    return {"vectors": [v[:, j].copy() for j in range(n)],
            "recon_error": recon_error}


def verify_equiangular_real(vectors, tol=1e-10):
    """Unit-norm and constant-|inner product| check on real vectors.

    The common angle is estimated as the median off-diagonal magnitude,
    so a single corrupted pair shows up as a deviation rather than
    skewing the estimate.
    """
    n = len(vectors)
    if n < 2:
        raise VerificationError("need at least two vectors")
    vs = [np.asarray(v, dtype=float) for v in vectors]
    max_dev = 0.0
    mags = []
    for j in range(n):
        max_dev = max(max_dev, abs(float(vs[j] @ vs[j]) - 1.0))
        for l in range(j + 1, n):
            mags.append(abs(float(vs[j] @ vs[l])))
    alpha_est = float(np.median(mags))
    for m in mags:
        max_dev = max(max_dev, abs(m - alpha_est))
    return {"ok": max_dev <= tol, "alpha_est": alpha_est, "max_dev": max_dev}


# ---------------------------------------------------------------------------
# reference configurations
# ---------------------------------------------------------------------------

def seidel_hexagon():
    """Sign pattern of three coplanar lines at sixty degrees."""
    return SeidelSpec([
        [0, 1, 1],
        [1, 0, -1],
        [1, -1, 0],
    ])


def seidel_icosahedron():
    """Sign pattern of the six diagonals of a regular icosahedron."""
    m = [[0] * 6 for _ in range(6)]
    neg = {(1, 6), (2, 3), (2, 4), (2, 6), (4, 5), (4, 6)}
    for j in range(6):
        for l in range(j + 1, 6):
            s = -1 if (j + 1, l + 1) in neg else 1
            m[j][l] = s
            m[l][j] = s
    return SeidelSpec(m)


def hexagon_lines():
    """Three unit vectors in the plane with pairwise angle sixty
    degrees; inner products +-1/2 matching seidel_hexagon."""
    r = math.sqrt(3) / 2
    return [
        np.array([1.0, 0.0]),
        np.array([0.5, r]),
        np.array([0.5, -r]),
    ]


def icosahedron_lines():
    """Six unit vectors along icosahedron diagonals; inner products
    +-1/sqrt(5) matching seidel_icosahedron."""
    a = math.sqrt((5 - math.sqrt(5)) / 10)
    b = math.sqrt((5 + math.sqrt(5)) / 10)
    return [
        np.array([0.0, a, b]),
        np.array([0.0, -a, b]),
        np.array([a, b, 0.0]),
        np.array([-a, b, 0.0]),
        np.array([b, 0.0, a]),
        np.array([b, 0.0, -a]),
    ]
