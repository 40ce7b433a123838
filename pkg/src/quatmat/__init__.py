"""Dense quaternion linear algebra with noncommutative determinants.

Exact (rational) and float backends for quaternion matrices; row and
column determinants; determinantal inverses; weighted Moore-Penrose
inverses; Cramer-style solvers for the restricted equations AXB=D,
AX=D, XB=D; and an independent complex-adjoint oracle for
cross-validation.
"""

from .scalars import F64, RATIONAL, Quaternion, format_quaternion
from .matrices import QMatrix, as_quaternion
from .rowcoldet import (
    SIZE_CAP,
    cdet,
    cofactor_left,
    cofactor_right,
    ddet,
    det_hermitian,
    det_hermitian_expansion,
    principal_minor_sum,
    rdet,
)
from .inverses import (
    WeightedContext,
    gauss_inverse,
    hpd_sqrt,
    inverse,
    inverse_hermitian,
    mp_inverse,
    penrose_residuals,
    rank,
    weighted_penrose_residuals,
    wmp_inverse,
)
from .equations import (
    RestrictedEquation,
    SolveOptions,
    SolveReport,
    hermitian_profile,
    rank_case,
    solve,
    solve_ax,
    solve_axb,
    solve_xb,
)
from .errors import (
    BackendMismatch,
    DimensionMismatch,
    MissingSquareRoot,
    NonSquare,
    NotAQuaternionImage,
    NotHermitian,
    NotHPD,
    NumericalInconsistency,
    QuatmatError,
    SingularMatrix,
    SizeCapExceeded,
    SolvabilityWarning,
    WeightNotHPD,
)
from .io import (
    ProblemBundle,
    load_problem,
    parse_matrix,
    read_matrix,
    report_to_dict,
    serialize_matrix,
    write_matrix,
    write_report,
)

__version__ = "0.1.0"

__all__ = [
    "F64",
    "RATIONAL",
    "Quaternion",
    "QMatrix",
    "as_quaternion",
    "format_quaternion",
    "SIZE_CAP",
    "rdet",
    "cdet",
    "ddet",
    "det_hermitian",
    "det_hermitian_expansion",
    "principal_minor_sum",
    "cofactor_right",
    "cofactor_left",
    "gauss_inverse",
    "rank",
    "hpd_sqrt",
    "inverse",
    "inverse_hermitian",
    "mp_inverse",
    "wmp_inverse",
    "WeightedContext",
    "penrose_residuals",
    "weighted_penrose_residuals",
    "RestrictedEquation",
    "SolveOptions",
    "SolveReport",
    "solve",
    "solve_axb",
    "solve_ax",
    "solve_xb",
    "hermitian_profile",
    "rank_case",
    "ProblemBundle",
    "parse_matrix",
    "serialize_matrix",
    "read_matrix",
    "write_matrix",
    "load_problem",
    "report_to_dict",
    "write_report",
    "QuatmatError",
    "BackendMismatch",
    "DimensionMismatch",
    "NonSquare",
    "SizeCapExceeded",
    "NotHermitian",
    "NotHPD",
    "WeightNotHPD",
    "SingularMatrix",
    "NumericalInconsistency",
    "MissingSquareRoot",
    "NotAQuaternionImage",
    "SolvabilityWarning",
    "__version__",
]
