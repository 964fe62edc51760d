"""Exact Frobenius series and rational solutions for KZ-type Fuchsian systems."""

from .scalars import Scalar, format_scalar, parse_scalar
from .poly import Poly, poly_gcd, rational_roots
from .ratfunc import RatFunc
from .matrix import (
    FMatrix,
    SingularMatrixError,
    SolveKind,
    SolveResult,
    charpoly,
    det,
    inverse,
    solve_linear,
)
from .kzmodel import (
    CONVENTIONS,
    DERIVED_TAYLOR,
    LITERAL_PAPER,
    SYMBOLIC,
    KZSystem,
    LocalExpansion,
    build_kz_s3,
    kz_system,
    local_expansion,
    system_matrix_at,
    transposition_matrix,
)
from .frobenius import (
    IndicialData,
    LEADING_POLICIES,
    POLICY_AUTO,
    POLICY_KERNEL,
    POLICY_PROJECTOR,
    RecursionReport,
    ResonanceObstruction,
    ResonanceRecord,
    SeriesSolution,
    compute_series,
    convolution_rhs,
    indicial_data,
    leading_coefficient,
    verify_recursion,
)
from .reconstruct import (
    InsufficientSeriesError,
    NoPolynomialDenominator,
    NotRepresentable,
    OdeVerdict,
    PoleError,
    RationalMatrixFunction,
    evaluate,
    propose_denominator,
    rational_matrix,
    reconstruct,
    suggest_numerator_degree,
    verify_ode,
)

__version__ = "0.1.0"

__all__ = [
    "Scalar",
    "parse_scalar",
    "format_scalar",
    "Poly",
    "poly_gcd",
    "rational_roots",
    "RatFunc",
    "FMatrix",
    "SolveKind",
    "SolveResult",
    "SingularMatrixError",
    "solve_linear",
    "inverse",
    "det",
    "charpoly",
    "SYMBOLIC",
    "DERIVED_TAYLOR",
    "LITERAL_PAPER",
    "CONVENTIONS",
    "KZSystem",
    "kz_system",
    "build_kz_s3",
    "transposition_matrix",
    "system_matrix_at",
    "LocalExpansion",
    "local_expansion",
    "IndicialData",
    "indicial_data",
    "SeriesSolution",
    "ResonanceRecord",
    "ResonanceObstruction",
    "RecursionReport",
    "compute_series",
    "convolution_rhs",
    "leading_coefficient",
    "verify_recursion",
    "POLICY_AUTO",
    "POLICY_KERNEL",
    "POLICY_PROJECTOR",
    "LEADING_POLICIES",
    "RationalMatrixFunction",
    "rational_matrix",
    "OdeVerdict",
    "propose_denominator",
    "reconstruct",
    "suggest_numerator_degree",
    "verify_ode",
    "evaluate",
    "NotRepresentable",
    "InsufficientSeriesError",
    "NoPolynomialDenominator",
    "PoleError",
    "__version__",
]
