"""Hermite normal forms of matrices of differential operators over Q(t).

Two independent algorithms compute, for a full-row-rank square matrix A over
F(t)[D;delta], the unique Hermite form H and unimodular transform U with
``U*A = H``: a constructive Euclidean elimination, and a reduction to linear
systems over the commutative field Q(t) with a binary search on the diagonal
degrees.
"""

from .errors import (
    DerivationMismatch,
    DivisionByZero,
    NotCleared,
    NotUnimodular,
    OrehnfError,
    ParseError,
    RankDeficient,
    ShapeError,
    ZeroOperand,
)
from .field import NEG_INF, Derivation, Rat, RatFun, TPoly, poly_gcd, poly_lcm
from .ore import GcrdResult, OrePoly, gcrd_extended, lclm
from .matrix_elim import (
    HermiteResult,
    OreMatrix,
    hermite_elimination,
    inverse_unimodular,
    is_hermite,
    off_diagonal_reduce,
    ore_mat_mul,
    random_unimodular,
    unimodular_2x2,
)
from .ftlinalg import FtMatrix, SolveOutcome, rank, solve
from .hermite_linsys import (
    EncodedSystem,
    build_system,
    clear_denominators,
    hermite_via_linsys,
    probe_budget,
    probe_consistent,
    search_degrees,
)
from .parsing import (
    Instance,
    format_instance,
    parse_entry,
    parse_instance,
    print_entry,
)
from .verify import VerificationReport, verify_hermite

__version__ = "0.1.0"

__all__ = [
    "DerivationMismatch",
    "DivisionByZero",
    "NotCleared",
    "NotUnimodular",
    "OrehnfError",
    "ParseError",
    "RankDeficient",
    "ShapeError",
    "ZeroOperand",
    "NEG_INF",
    "Derivation",
    "Rat",
    "RatFun",
    "TPoly",
    "poly_gcd",
    "poly_lcm",
    "GcrdResult",
    "OrePoly",
    "gcrd_extended",
    "lclm",
    "HermiteResult",
    "OreMatrix",
    "hermite_elimination",
    "inverse_unimodular",
    "is_hermite",
    "off_diagonal_reduce",
    "ore_mat_mul",
    "random_unimodular",
    "unimodular_2x2",
    "FtMatrix",
    "SolveOutcome",
    "rank",
    "solve",
    "EncodedSystem",
    "build_system",
    "clear_denominators",
    "hermite_via_linsys",
    "probe_budget",
    "probe_consistent",
    "search_degrees",
    "Instance",
    "format_instance",
    "parse_entry",
    "parse_instance",
    "print_entry",
    "VerificationReport",
    "verify_hermite",
]
