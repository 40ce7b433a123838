"""Row and column determinants of quaternion matrices.

Over a noncommutative field the order of the factors in each permutation
product matters, so a single scalar "det" does not exist for general
matrices.  Instead there are n row determinants and n column determinants:

* ``rdet(i, A)``: sum over all permutations of {1..n}, each written in a
  normal form whose first cycle starts at i and whose remaining cycles start
  at their smallest element and are listed by increasing smallest element.
  Each cycle contributes the left-to-right product of entries along the
  cycle (a_{s,sigma(s)} a_{sigma(s),sigma^2(s)} ...), and the cycle products
  are multiplied in the listed order.  The sign is (-1)^(n-r) for r cycles.

* ``cdet(j, A)``: the mirror functional, equal to conj(rdet_j(A*)).  Same
  cycle normal form (leader j), same per-cycle words, but the cycle products
  are multiplied in reversed order, the j-cycle coming last.

For Hermitian matrices all 2n functionals coincide and are real; that common
value is ``det_hermitian``.  The double determinant ``ddet(A)`` is
det_hermitian(A A*) and tests invertibility of a general square A.

Everything here is evaluated by direct enumeration, which is factorial in n;
``SIZE_CAP`` caps the matrix size at 8.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .errors import (
    NonSquare,
    NotHermitian,
    NumericalInconsistency,
    SizeCapExceeded,
)
from .matrices import QMatrix, as_quaternion, enumerate_index_sets
from .scalars import F64, Quaternion

SIZE_CAP = 8


def cycle_partitions(pool, leader):
    """Yield every permutation of ``pool`` as a normal-form cycle list.

    Each yielded value is a tuple of cycles; each cycle is a tuple whose
    first element is its leader.  The first cycle is led by ``leader``; every
    later cycle is led by the smallest remaining index, so the leaders of
    cycles 2..r increase automatically.  Exactly len(pool)! partitions come
    out, one per permutation.
    """
    rest = tuple(x for x in pool if x != leader)
    for size in range(len(rest) + 1):
        for tail in permutations(rest, size):
            cycle = (leader,) + tail
            remaining = tuple(x for x in rest if x not in tail)
            if not remaining:
                yield (cycle,)
            else:
                for more in cycle_partitions(remaining, remaining[0]):
                    yield (cycle,) + more


def _cycle_word(A, cycle):
    """Product of entries along a cycle: a_{c0,c1} a_{c1,c2} ... a_{cL-1,c0}."""
    word = None
    for s in range(len(cycle)):
        factor = A[cycle[s], cycle[(s + 1) % len(cycle)]]
        word = factor if word is None else word * factor
    return word


def _check_square_capped(A, index):
    if not A.is_square():
        raise NonSquare("row/column determinants need a square matrix, got %dx%d" % A.shape)
    if A.n > SIZE_CAP:
        raise SizeCapExceeded(
            "n = %d exceeds the enumeration cap %d (factorial cost)" % (A.n, SIZE_CAP)
        )
    if not 1 <= index <= A.n:
        raise IndexError("determinant index %d outside 1..%d" % (index, A.n))


def rdet(i, A):
    """Row determinant of A at row i (1-based)."""
    _check_square_capped(A, i)
    n = A.n
    total = None
    for cycles in cycle_partitions(tuple(range(1, n + 1)), i):
        term = None
        for cyc in cycles:
            w = _cycle_word(A, cyc)
            term = w if term is None else term * w
        if (n - len(cycles)) % 2:
            term = -term
        total = term if total is None else total + term
    return total


def cdet(j, A):
    """Column determinant of A at column j (1-based)."""
    _check_square_capped(A, j)
    n = A.n
    total = None
    for cycles in cycle_partitions(tuple(range(1, n + 1)), j):
        term = None
        for cyc in reversed(cycles):
            w = _cycle_word(A, cyc)
            term = w if term is None else term * w
        if (n - len(cycles)) % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _as_real(value, tol=None):
    """Strip a (provably real) determinant value down to a real scalar."""
    if value.backend == F64:
        if tol is None:
            tol = 1e-9 * max(1.0, value.abs())
        imag = max(abs(value.a1), abs(value.a2), abs(value.a3))
        if imag > tol:
            raise NumericalInconsistency(
                "determinant of a Hermitian matrix came out non-real "
                "(imaginary magnitude %g > tol %g)" % (imag, tol)
            )
    else:
        if value.a1 or value.a2 or value.a3:
            raise NumericalInconsistency(
                "exact determinant of a Hermitian matrix has nonzero i/j/k parts: %r" % (value,)
            )
    return value.a0


def det_hermitian(A, verify=False, tol=None):
    """The common value of all row/column determinants of a Hermitian matrix.

    With ``verify=True`` all 2n functionals are evaluated and must agree
    (exactly on the rational backend, within ``tol`` on floats).
    """
    if not A.is_square():
        raise NonSquare("det_hermitian needs a square matrix")
    if not A.is_hermitian():
        raise NotHermitian("det_hermitian requires A* = A")
    base = rdet(1, A)
    if verify:
        others = [rdet(i, A) for i in range(2, A.n + 1)]
        others += [cdet(j, A) for j in range(1, A.n + 1)]
        for q in others:
            if A.backend == F64:
                check = tol if tol is not None else 1e-9 * max(1.0, base.abs())
                if not base.approx_eq(q, check):
                    raise NumericalInconsistency(
                        "row/column determinants of a Hermitian matrix disagree: %r vs %r"
                        % (base, q)
                    )
            elif base != q:
                raise NumericalInconsistency(
                    "row/column determinants of a Hermitian matrix disagree: %r vs %r"
                    % (base, q)
                )
    return _as_real(base, tol)


def ddet(A, verify=False):
    """Double determinant det(A A*), equal to det(A* A); real, >= 0."""
    if not A.is_square():
        raise NonSquare("ddet needs a square matrix")
    value = det_hermitian(A @ A.H, verify=verify)
    if verify:
        dual = det_hermitian(A.H @ A, verify=True)
        if A.backend == F64:
            if abs(value - dual) > 1e-9 * max(1.0, abs(value)):
                raise NumericalInconsistency("det(AA*) and det(A*A) disagree")
        elif value != dual:
            raise NumericalInconsistency("det(AA*) and det(A*A) disagree")
    return value


# -- cofactors of a Hermitian matrix -------------------------------------------

def _require_hermitian(A, least=2):
    if not A.is_square():
        raise NonSquare("cofactors need a square matrix")
    if A.n < least:
        raise NonSquare("cofactors need n >= %d" % least)
    if not A.is_hermitian():
        raise NotHermitian("cofactors are defined here for Hermitian matrices")


def cofactor_right(A, i, j):
    """Right (i,j) cofactor R_ij of a Hermitian A: rdet A = sum_j a_ij R_ij.

    For i != j: take A, overwrite column j with column i, delete row i and
    column i, and evaluate -rdet at what is now column j's position.  For
    i == j: rdet of the (i,i) minor at its smallest index.
    """
    _require_hermitian(A)
    if i == j:
        return rdet(1, A.delete_row_col(i, i))
    replaced = A.replace_column(j, A.column(i))
    minor = replaced.delete_row_col(i, i)
    local_j = j - 1 if j > i else j
    return -rdet(local_j, minor)


def cofactor_left(A, i, j):
    """Left (i,j) cofactor L_ij of a Hermitian A: cdet A = sum_i L_ij a_ij."""
    _require_hermitian(A)
    if i == j:
        return cdet(1, A.delete_row_col(j, j))
    replaced = A.replace_row(i, A.row(j))
    minor = replaced.delete_row_col(j, j)
    local_i = i - 1 if i > j else i
    return -cdet(local_i, minor)


def det_hermitian_expansion(A, i=1, side="row"):
    """Determinant of a Hermitian A via cofactor expansion (cross-check path).

    side="row": sum_j a_ij * R_ij along row i; side="col": sum_i L_ij * a_ij
    down column i.  Agrees with det_hermitian; kept separate so tests can
    compare the two evaluation strategies.
    """
    _require_hermitian(A, least=1)
    if A.n == 1:
        return _as_real(A[1, 1])
    if side == "row":
        acc = None
        for j in range(1, A.n + 1):
            term = A[i, j] * cofactor_right(A, i, j)
            acc = term if acc is None else acc + term
    elif side == "col":
        acc = None
        for r in range(1, A.n + 1):
            term = cofactor_left(A, r, i) * A[r, i]
            acc = term if acc is None else acc + term
    else:
        raise ValueError("side must be 'row' or 'col'")
    return _as_real(acc)


# -- principal minors and the characteristic polynomial -------------------------

def principal_minor(A, alpha):
    """det of the principal submatrix of Hermitian A on index set alpha."""
    return det_hermitian(A.submatrix(tuple(alpha), tuple(alpha)))


def principal_minor_sum(A, k):
    """d_k: the sum of all order-k principal minors of a Hermitian A."""
    if not A.is_square():
        raise NonSquare("principal minors need a square matrix")
    if not A.is_hermitian():
        raise NotHermitian("principal minors are taken of Hermitian matrices")
    total = Fraction(0) if A.backend != F64 else 0.0
    for alpha in enumerate_index_sets(k, A.n):
        total = total + principal_minor(A, alpha)
    return total


def char_poly(A):
    """Coefficients (d_1, ..., d_n) of p(t) = t^n - d_1 t^(n-1) + ... +(-1)^n d_n."""
    if not A.is_square():
        raise NonSquare("char_poly needs a square matrix")
    if not A.is_hermitian():
        raise NotHermitian("char_poly requires a Hermitian matrix")
    return tuple(principal_minor_sum(A, k) for k in range(1, A.n + 1))


# -- column/row-replaced determinants and their principal minors ----------------
#
# The generalized-inverse and Cramer-rule formulas are all built from two
# shapes: "replace column i of G by a vector, then take cdet_i of a principal
# submatrix containing i" and the row/rdet mirror.  The submatrix is cut from
# the *replaced* full matrix, and the determinant index is the position of
# i inside the index set.

def cdet_col_minor(G, i, col, beta=None):
    """cdet at column i of G with column i overwritten by ``col``.

    ``beta`` (a sorted 1-based index tuple containing i) restricts to the
    principal submatrix on beta; None means the full matrix.
    """
    replaced = G.replace_column(i, col)
    if beta is None:
        return cdet(i, replaced)
    sub = replaced.submatrix(tuple(beta), tuple(beta))
    return cdet(tuple(beta).index(i) + 1, sub)


def rdet_row_minor(H, j, row, alpha=None):
    """rdet at row j of H with row j overwritten by ``row`` (minor on alpha)."""
    replaced = H.replace_row(j, row)
    if alpha is None:
        return rdet(j, replaced)
    sub = replaced.submatrix(tuple(alpha), tuple(alpha))
    return rdet(tuple(alpha).index(j) + 1, sub)


def principal_minor_sum_fixed(G, r, i=None, col=None, row=None, j=None):
    """Shared minor-sum kernels for the determinantal inverse formulas.

    Exactly one of the two replacement modes may be active:

    * ``i``/``col``: sum of cdet_col_minor(G, i, col, beta) over all r-subsets
      beta containing i;
    * ``j``/``row``: sum of rdet_row_minor(G, j, row, alpha) over all r-subsets
      alpha containing j;
    * neither: sum of plain principal minors of order r (the denominators).
    """
    n = G.n
    total = None
    if i is not None:
        for beta in enumerate_index_sets(r, n, fixed=i):
            term = cdet_col_minor(G, i, col, beta)
            total = term if total is None else total + term
    elif j is not None:
        for alpha in enumerate_index_sets(r, n, fixed=j):
            term = rdet_row_minor(G, j, row, alpha)
            total = term if total is None else total + term
    else:
        acc = None
        for beta in enumerate_index_sets(r, n):
            term = principal_minor(G, beta)
            acc = term if acc is None else acc + term
        return acc
    if total is None:
        zero = Quaternion(0.0) if G.backend == F64 else Quaternion(0)
        return zero
    return total


def as_real_quaternion(value, backend):
    """Embed a real scalar back into H (for mixed real/quaternion algebra)."""
    return as_quaternion(value, backend)
