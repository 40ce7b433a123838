"""Exception types shared across the library."""


class QuatmatError(Exception):
    """Base class for all library errors."""


class BackendMismatch(QuatmatError, TypeError):
    """Mixed exact-rational and float scalars in one operation."""


class DimensionMismatch(QuatmatError, ValueError):
    """Operands have incompatible shapes."""


class NonSquare(DimensionMismatch):
    """A square matrix was required."""


class SizeCapExceeded(QuatmatError, ValueError):
    """Permutation-sum determinants are capped (factorial cost)."""


class NotHermitian(QuatmatError, ValueError):
    """A Hermitian matrix was required."""


class NotHPD(NotHermitian):
    """A Hermitian positive definite matrix was required."""


class WeightNotHPD(NotHPD):
    """A weight matrix failed the Hermitian positive definite check."""


class SingularMatrix(QuatmatError, ZeroDivisionError):
    """Inverse of a non-invertible matrix was requested."""


class NumericalInconsistency(QuatmatError, ArithmeticError):
    """A float computation produced a value the theory forbids (NaN, or an
    imaginary residue where a real number is guaranteed)."""


class MissingSquareRoot(QuatmatError, ValueError):
    """The exact backend needed a matrix square root that is not rational and
    was not supplied by the caller."""


class NotAQuaternionImage(QuatmatError, ValueError):
    """A complex matrix lacks the block symmetry of an adjoint image."""


class SolvabilityWarning(UserWarning):
    """The right-hand side lies outside the solvable set: the equation has no
    exact solution under the given restrictions, and the returned matrix is
    the unique restricted candidate rather than an exact solution."""
