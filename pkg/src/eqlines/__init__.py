"""Exact toolkit for equiangular line systems.

Generates the defining polynomial systems for maximal sets of complex
equiangular lines (SIC-POVMs), Weyl-Heisenberg covariant fiducial
vectors, and real equiangular line sets; computes Groebner bases with
Buchberger's algorithm over Q and over cyclotomic fields; solves the
zero-dimensional systems numerically at arbitrary precision; verifies
candidate configurations.
"""

__version__ = "0.1.0"

from .exact import QQ, CycloField, CycloNum, cyclotomic_poly
from .polyring import Poly, Ring
from .groebner import (
    Certificate,
    PairBudgetExceeded,
    buchberger,
    check_certificate,
    elimination_ideal,
    grevlex_then_lex,
    is_groebner,
    is_zero_dimensional,
    quotient_dimension,
)
from .sicgen import (
    PolySystem,
    apply_weyl,
    gen_complex_full,
    gen_real_system,
    gen_wh_system,
)
from .solver import (
    SolutionPoint,
    SolutionSet,
    Tolerances,
    classify,
    match_zauner,
    solve_triangular,
    univariate_roots,
    zauner_vectors,
)
from .verify import (
    SeidelSpec,
    gram_analysis,
    spectral_reconstruct,
    unit_certify,
    verify_equiangular_complex,
    verify_equiangular_real,
    verify_fiducial,
)
