"""Generalized inverses through noncommutative determinantal representations.

Everything here is built from two minor-sum kernels (column-replaced cdet
minors and row-replaced rdet minors, see rowcoldet): the Hermitian cofactor
inverse, the double-determinant inverse of an arbitrary square matrix, the
Moore-Penrose inverse in all rank cases, and the weighted Moore-Penrose
inverse for Hermitian-positive-definite weights.

The weighted formulas come in three families, selected by whether the
weighted-adjoint products ``adjoint @ A`` / ``A @ adjoint`` are Hermitian:
Hermitian-profile forms (no square roots needed), plain full-rank forms
(no square roots needed), and root forms for the rank-deficient
non-Hermitian profile, which require M^(1/2) and N^(-1/2).  On the float
backend those roots come from the complex-adjoint oracle; on the exact
backend they come from closed-form block square roots or must be supplied
by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    MissingSquareRoot,
    NonSquare,
    NotHermitian,
    NumericalInconsistency,
    SingularMatrix,
    WeightNotHPD,
)
from .matrices import QMatrix
from .rowcoldet import (
    det_hermitian,
    ddet,
    cofactor_left,
    cofactor_right,
    principal_minor_sum,
    principal_minor_sum_fixed,
)
from .scalars import F64, RATIONAL, Quaternion


def _agree(X, Y, what):
    """Exact equality on the rational backend, scaled closeness on float."""
    if X.backend == RATIONAL:
        if X != Y:
            raise NumericalInconsistency("%s disagree on the exact backend" % what)
    else:
        tol = 1e-9 * max(1.0, X.max_abs(), Y.max_abs())
        if not X.approx_eq(Y, tol):
            raise NumericalInconsistency(
                "%s disagree beyond tolerance %.3g" % (what, tol)
            )


# -- elimination workhorses ------------------------------------------------------

def gauss_inverse(A):
    """Two-sided inverse by Gauss-Jordan elimination with left row operations.

    This is the factorial-free workhorse used internally for weight matrices;
    the determinantal constructions below are cross-checked against it in the
    test suite.  Raises SingularMatrix when no inverse exists.
    """
    if not A.is_square():
        raise NonSquare("inverse of a %dx%d matrix" % A.shape)
    n = A.n
    backend = A.backend
    one = Quaternion(1.0) if backend == F64 else Quaternion(1)
    zero = Quaternion(0.0) if backend == F64 else Quaternion(0)
    aug = [
        [A[r + 1, c + 1] for c in range(n)]
        + [one if r == c else zero for c in range(n)]
        for r in range(n)
    ]
    for col in range(n):
        if backend == F64:
            pivot = max(range(col, n), key=lambda r: aug[r][col].norm2())
        else:
            pivot = next(
                (r for r in range(col, n) if not aug[r][col].is_zero()), col
            )
        if aug[pivot][col].is_zero():
            raise SingularMatrix("matrix is not invertible")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inv()
        aug[col] = [inv * e for e in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [er - f * ec for er, ec in zip(aug[r], aug[col])]
    return QMatrix.from_rows([row[n:] for row in aug])


def rank(A):
    """Rank over the skew field.

    Exact backend: left-row Gaussian elimination (row rank = column rank over
    a division ring).  Float backend: singular-value count of the complex
    adjoint, which is far more robust than elimination with a tolerance.
    """
    if A.backend == F64:
        from .adjoint import rank_oracle

        return rank_oracle(A)
    m, n = A.shape
    rows = [list(A.row(r)) for r in range(1, m + 1)]
    lead = 0
    for col in range(n):
        pivot = next((r for r in range(lead, m) if not rows[r][col].is_zero()), None)
        if pivot is None:
            continue
        rows[lead], rows[pivot] = rows[pivot], rows[lead]
        inv = rows[lead][col].inv()
        rows[lead] = [inv * e for e in rows[lead]]
        for r in range(m):
            if r != lead and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [e - f * p for e, p in zip(rows[r], rows[lead])]
        lead += 1
        if lead == m:
            break
    return lead


# -- inverses of square matrices -------------------------------------------------

def inverse_hermitian(A, verify=False):
    """Inverse of a Hermitian matrix from its cofactor adjugate.

    Entry (s, t) is the right cofactor at (t, s) divided by det A; with
    ``verify=True`` the left-cofactor construction is computed as well and the
    two must agree.  Raises SingularMatrix on zero determinant.
    """
    if not A.is_square():
        raise NonSquare("inverse of a %dx%d matrix" % A.shape)
    if not A.is_hermitian():
        raise NotHermitian("inverse_hermitian needs a Hermitian matrix")
    d = det_hermitian(A)
    if d == 0:
        raise SingularMatrix("determinant is zero")
    n = A.n
    if n == 1:
        one = 1.0 if A.backend == F64 else Fraction(1)
        return QMatrix.from_rows([[Quaternion(one / d)]])
    X = QMatrix.from_rows(
        [[cofactor_right(A, t, s) / d for t in range(1, n + 1)] for s in range(1, n + 1)]
    )
    if verify:
        Y = QMatrix.from_rows(
            [[cofactor_left(A, t, s) / d for t in range(1, n + 1)]
             for s in range(1, n + 1)]
        )
        _agree(X, Y, "right- and left-cofactor inverses")
    return X


def inverse(A, verify=False):
    """Inverse of an arbitrary square matrix through its double determinant.

    A is invertible iff ddet A != 0; entry (s, t) is then the cdet minor of
    A*A with column s replaced by column t of A*, divided by ddet A.  The
    ``verify=True`` path also builds the mirrored rdet construction over AA*
    and checks the two agree.
    """
    if not A.is_square():
        raise NonSquare("inverse of a %dx%d matrix" % A.shape)
    dd = ddet(A)
    if dd == 0:
        raise SingularMatrix("double determinant is zero")
    n = A.n
    Ah = A.H
    G = Ah @ A
    X = QMatrix.from_rows(
        [
            [principal_minor_sum_fixed(G, n, i=s, col=Ah.column(t)) / dd
             for t in range(1, n + 1)]
            for s in range(1, n + 1)
        ]
    )
    if verify:
        Hm = A @ Ah
        Y = QMatrix.from_rows(
            [
                [principal_minor_sum_fixed(Hm, n, j=t, row=Ah.row(s)) / dd
                 for t in range(1, n + 1)]
                for s in range(1, n + 1)
            ]
        )
        _agree(X, Y, "column- and row-determinant inverses")
    return X


# -- Hermitian positive definite square roots -------------------------------------

def rational_sqrt(x):
    """Exact square root of a nonnegative Fraction, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def assert_hpd(W, name="weight"):
    """Raise WeightNotHPD unless W is Hermitian positive definite.

    Exact backend: Sylvester's criterion on leading principal minors.  Float
    backend: eigenvalues of the complex adjoint.
    """
    if not W.is_square():
        raise NonSquare("%s must be square" % name)
    if not W.is_hermitian():
        raise WeightNotHPD("%s is not Hermitian" % name)
    if W.backend == RATIONAL:
        idx = ()
        for k in range(1, W.n + 1):
            idx = idx + (k,)
            if det_hermitian(W.submatrix(idx, idx)) <= 0:
                raise WeightNotHPD(
                    "%s has a nonpositive leading principal minor (order %d)"
                    % (name, k)
                )
    else:
        from .adjoint import eig_hermitian

        vals, _ = eig_hermitian(W)
        scale = max(1.0, max(abs(v) for v in vals))
        if min(vals) <= 1e-12 * scale:
            raise WeightNotHPD("%s is not positive definite" % name)


def _offdiag_components(W):
    """Connected components of the off-diagonal adjacency graph of W."""
    n = W.n
    seen = [False] * (n + 1)
    comps = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        comp, stack = [], [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(1, n + 1):
                if w != v and not seen[w] and not W[v, w].is_zero():
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def hpd_sqrt(W, name="weight"):
    """Hermitian positive definite square root of W.

    Float backend: eigendecomposition of the complex adjoint.  Exact backend:
    closed forms exist when the off-diagonal adjacency of W splits into 1x1
    and 2x2 blocks and the required eigenvalue square roots are rational;
    anything else raises MissingSquareRoot (supply the root explicitly then).
    """
    assert_hpd(W, name)
    if W.backend == F64:
        from .adjoint import hpd_sqrt_oracle

        return hpd_sqrt_oracle(W)
    n = W.n
    out = [[Quaternion(0) for _ in range(n)] for _ in range(n)]
    for comp in _offdiag_components(W):
        if len(comp) == 1:
            (p,) = comp
            s = rational_sqrt(W[p, p].real)
            if s is None:
                raise MissingSquareRoot(
                    "diagonal entry %s of %s has no rational square root"
                    % (W[p, p].real, name)
                )
            out[p - 1][p - 1] = Quaternion(s)
        elif len(comp) == 2:
            p, q = comp
            a, c, b = W[p, p].real, W[q, q].real, W[p, q]
            tr = a + c
            det2 = a * c - b.norm2()
            disc = tr * tr - 4 * det2  # (a-c)^2 + 4|b|^2 > 0 on a connected block
            sq = rational_sqrt(disc)
            lam1 = (tr + sq) / 2 if sq is not None else None
            lam2 = (tr - sq) / 2 if sq is not None else None
            s1 = rational_sqrt(lam1) if lam1 is not None else None
            s2 = rational_sqrt(lam2) if lam2 is not None else None
            if s1 is None or s2 is None:
                raise MissingSquareRoot(
                    "2x2 block (%d, %d) of %s has irrational eigenvalue "
                    "square roots" % (p, q, name)
                )
            # sqrt(B) = alpha*I + beta*B with beta = (s1-s2)/(lam1-lam2)
            beta = (s1 - s2) / (lam1 - lam2)
            alpha = s1 - beta * lam1
            out[p - 1][p - 1] = Quaternion(alpha + beta * a)
            out[q - 1][q - 1] = Quaternion(alpha + beta * c)
            out[p - 1][q - 1] = b.scale(beta)
            out[q - 1][p - 1] = b.conj().scale(beta)
        else:
            raise MissingSquareRoot(
                "no exact closed form for a connected %dx%d block of %s"
                % (len(comp), len(comp), name)
            )
    return QMatrix.from_rows(out)


# -- Penrose residuals ------------------------------------------------------------

def penrose_residuals(A, X):
    """Max-abs residuals of the four defining equations of the MP inverse."""
    e1 = (A @ X @ A - A).max_abs()
    e2 = (X @ A @ X - X).max_abs()
    ax = A @ X
    xa = X @ A
    e3 = (ax.H - ax).max_abs()
    e4 = (xa.H - xa).max_abs()
    return (e1, e2, e3, e4)


def weighted_penrose_residuals(A, X, M, N):
    """Residuals of equations (1), (2) and the M/N-weighted symmetries."""
    e1 = (A @ X @ A - A).max_abs()
    e2 = (X @ A @ X - X).max_abs()
    max_ = M @ A @ X
    nxa = N @ X @ A
    e3 = (max_.H - max_).max_abs()
    e4 = (nxa.H - nxa).max_abs()
    return (e1, e2, e3, e4)


# -- Moore-Penrose inverse ---------------------------------------------------------

def _mp_column_route(A, r):
    """Minor sums over A*A; covers deficient ranks and, with r = n, full column rank."""
    Ah = A.H
    G = Ah @ A
    den = principal_minor_sum(G, r)
    m, n = A.shape
    return QMatrix.from_rows(
        [
            [principal_minor_sum_fixed(G, r, i=i, col=Ah.column(j)) / den
             for j in range(1, m + 1)]
            for i in range(1, n + 1)
        ]
    )


def _mp_row_route(A, r):
    """Mirror of the column route over AA*."""
    Ah = A.H
    Hm = A @ Ah
    den = principal_minor_sum(Hm, r)
    m, n = A.shape
    return QMatrix.from_rows(
        [
            [principal_minor_sum_fixed(Hm, r, j=j, row=Ah.row(i)) / den
             for j in range(1, m + 1)]
            for i in range(1, n + 1)
        ]
    )


def mp_inverse(A, verify=False):
    """Moore-Penrose inverse by minor sums, dispatched on the rank case.

    Full column rank uses the A*A route with determinant denominators, full
    row rank the AA* route; deficient ranks use the minor sums over index
    sets of size r on whichever Gram matrix is smaller.  ``verify=True``
    computes both routes (where defined) and checks they agree.
    """
    m, n = A.shape
    r = rank(A)
    if r == 0:
        return QMatrix.zeros(n, m, backend=A.backend)
    if r == n:
        X = _mp_column_route(A, r)
        other = _mp_row_route(A, r) if (verify and r == m) else None
    elif r == m:
        X = _mp_row_route(A, r)
        other = None
    else:
        X = _mp_column_route(A, r) if n <= m else _mp_row_route(A, r)
        other = (_mp_row_route(A, r) if n <= m else _mp_column_route(A, r)) if verify else None
    if verify:
        if other is not None:
            _agree(X, other, "column- and row-route pseudoinverses")
        _check_penrose(A, X, penrose_residuals(A, X))
    return X


def _check_penrose(A, X, residuals):
    if A.backend == RATIONAL:
        if any(e != 0 for e in residuals):
            raise NumericalInconsistency(
                "a defining equation fails exactly: residuals %r" % (residuals,)
            )
    else:
        tol = 1e-8 * max(1.0, A.max_abs(), X.max_abs())
        if any(e > tol for e in residuals):
            raise NumericalInconsistency(
                "a defining equation fails: residuals %r > %.3g" % (residuals, tol)
            )


# -- weighted Moore-Penrose inverse ------------------------------------------------

@dataclass
class WeightedContext:
    """Cached data for one weighted-inverse problem (A with weights M, N).

    M (m x m) and N (n x n) must be Hermitian positive definite.  The
    weighted adjoint is ``adjoint = N^(-1) A* M``; the profile flags record
    which of adjoint@A and A@adjoint are Hermitian, selecting the formula
    family.  Square roots are resolved lazily: float always succeeds through
    the oracle, exact uses closed-form block roots or the caller-supplied
    ``m_sqrt`` / ``n_inv_sqrt`` and raises MissingSquareRoot otherwise.
    """

    A: QMatrix
    M: QMatrix
    N: QMatrix
    m_sqrt: "QMatrix | None" = None
    n_inv_sqrt: "QMatrix | None" = None
    check_weights: bool = True
    n_inv: QMatrix = field(init=False, repr=False, default=None)
    adjoint: QMatrix = field(init=False, repr=False, default=None)
    gram_col: QMatrix = field(init=False, repr=False, default=None)
    gram_row: QMatrix = field(init=False, repr=False, default=None)
    col_hermitian: bool = field(init=False, default=False)
    row_hermitian: bool = field(init=False, default=False)
    r: int = field(init=False, default=0)
    last_branch: str = field(init=False, default="", repr=False)
    _a_tilde: QMatrix = field(init=False, repr=False, default=None)

    def __post_init__(self):
        m, n = self.A.shape
        if self.M.shape != (m, m):
            raise DimensionMismatch(
                "left weight must be %dx%d, got %dx%d" % (m, m, *self.M.shape)
            )
        if self.N.shape != (n, n):
            raise DimensionMismatch(
                "right weight must be %dx%d, got %dx%d" % (n, n, *self.N.shape)
            )
        if self.check_weights:
            assert_hpd(self.M, "left weight")
            assert_hpd(self.N, "right weight")
        self.n_inv = gauss_inverse(self.N)
        self.adjoint = self.n_inv @ self.A.H @ self.M
        self.gram_col = self.adjoint @ self.A
        self.gram_row = self.A @ self.adjoint
        self.col_hermitian = self.gram_col.is_hermitian()
        self.row_hermitian = self.gram_row.is_hermitian()
        self.r = rank(self.A)
        if self.m_sqrt is not None:
            self._validate_root(self.m_sqrt, self.M, "m_sqrt")
        if self.n_inv_sqrt is not None:
            self._validate_root(self.n_inv_sqrt, self.n_inv, "n_inv_sqrt")

    @staticmethod
    def _validate_root(root, target, name):
        square = root @ root
        if root.backend == RATIONAL:
            ok = square == target
        else:
            ok = square.approx_eq(target, 1e-9 * max(1.0, target.max_abs()))
        if not ok:
            raise ValueError("supplied %s does not square to its target" % name)

    @property
    def profile(self):
        if self.col_hermitian and self.row_hermitian:
            return "both-hermitian"
        if self.col_hermitian:
            return "column-hermitian"
        if self.row_hermitian:
            return "row-hermitian"
        return "non-hermitian"

    def get_m_sqrt(self):
        if self.m_sqrt is None:
            self.m_sqrt = hpd_sqrt(self.M, "left weight")
        return self.m_sqrt

    def get_n_inv_sqrt(self):
        if self.n_inv_sqrt is None:
            self.n_inv_sqrt = hpd_sqrt(self.n_inv, "inverse right weight")
        return self.n_inv_sqrt

    def get_a_tilde(self):
        """The root-weighted matrix M^(1/2) A N^(-1/2)."""
        if self._a_tilde is None:
            self._a_tilde = self.get_m_sqrt() @ self.A @ self.get_n_inv_sqrt()
        return self._a_tilde

    def col_gram_plain(self):
        """A* M A - the root-free column Gram for the full-column-rank form."""
        return self.A.H @ self.M @ self.A

    def row_gram_plain(self):
        """A N^(-1) A* - the root-free row Gram for the full-row-rank form."""
        return self.A @ self.n_inv @ self.A.H


def _scale_matrix(T, den):
    return QMatrix.from_rows(
        [[T[i, j] / den for j in range(1, T.n + 1)] for i in range(1, T.m + 1)]
    )


def _wmp_hermitian_col(ctx):
    G = ctx.gram_col
    den = principal_minor_sum(G, ctx.r)
    m, n = ctx.A.shape
    T = QMatrix.from_rows(
        [
            [principal_minor_sum_fixed(G, ctx.r, i=i, col=ctx.adjoint.column(j))
             for j in range(1, m + 1)]
            for i in range(1, n + 1)
        ]
    )
    return _scale_matrix(T, den)


def _wmp_hermitian_row(ctx):
    Hm = ctx.gram_row
    den = principal_minor_sum(Hm, ctx.r)
    m, n = ctx.A.shape
    T = QMatrix.from_rows(
        [
            [principal_minor_sum_fixed(Hm, ctx.r, j=j, row=ctx.adjoint.row(i))
             for j in range(1, m + 1)]
            for i in range(1, n + 1)
        ]
    )
    return _scale_matrix(T, den)


def _wmp_plain_col_full(ctx):
    G = ctx.col_gram_plain()
    den = det_hermitian(G)
    src = ctx.A.H @ ctx.M
    m, n = ctx.A.shape
    T = QMatrix.from_rows(
        [
            [principal_minor_sum_fixed(G, n, i=i, col=src.column(j))
             for j in range(1, m + 1)]
            for i in range(1, n + 1)
        ]
    )
    return _scale_matrix(T, den)


def _wmp_plain_row_full(ctx):
    Hm = ctx.row_gram_plain()
    den = det_hermitian(Hm)
    src = ctx.n_inv @ ctx.A.H
    m, n = ctx.A.shape
    T = QMatrix.from_rows(
        [
            [principal_minor_sum_fixed(Hm, m, j=j, row=src.row(i))
             for j in range(1, m + 1)]
            for i in range(1, n + 1)
        ]
    )
    return _scale_matrix(T, den)


def _wmp_root_deficient_col(ctx):
    # the root-weighted column Gram equals N^(-1/2) (A* M A) N^(-1/2), so
    # this route needs only the N-side root
    ninv2 = ctx.get_n_inv_sqrt()
    G = ninv2 @ ctx.col_gram_plain() @ ninv2
    den = principal_minor_sum(G, ctx.r)
    src = ninv2 @ ctx.A.H @ ctx.M
    m, n = ctx.A.shape
    # inner minor sums at each root-space index k; the outer N^(-1/2) factor
    # then mixes them, which is exactly a matrix product from the left
    T = QMatrix.from_rows(
        [
            [principal_minor_sum_fixed(G, ctx.r, i=k, col=src.column(j))
             for j in range(1, m + 1)]
            for k in range(1, n + 1)
        ]
    )
    return _scale_matrix(ctx.get_n_inv_sqrt() @ T, den)


def _wmp_root_deficient_row(ctx):
    # the root-weighted row Gram equals M^(1/2) (A N^(-1) A*) M^(1/2), so
    # this route needs only the M-side root
    msq = ctx.get_m_sqrt()
    Hm = msq @ ctx.row_gram_plain() @ msq
    den = principal_minor_sum(Hm, ctx.r)
    src = ctx.n_inv @ ctx.A.H @ msq
    m, n = ctx.A.shape
    T = QMatrix.from_rows(
        [
            [principal_minor_sum_fixed(Hm, ctx.r, j=l, row=src.row(i))
             for l in range(1, m + 1)]
            for i in range(1, n + 1)
        ]
    )
    return _scale_matrix(T @ msq, den)


def wmp_inverse(A=None, M=None, N=None, ctx=None, verify=False):
    """Weighted Moore-Penrose inverse by determinantal representation.

    Dispatch: zero rank short-circuits; a Hermitian adjoint product selects
    the Hermitian-profile family on that side (no square roots needed); the
    non-Hermitian profile uses the root-free plain forms at full rank and the
    root forms otherwise.  With both weights omitted this is mp_inverse.

    ``verify=True`` checks the defining equations (1), (2), (3M), (4N) and,
    where a second route is available, route agreement.
    """
    if ctx is None:
        if A is None:
            raise ValueError("either a matrix or a prepared context is required")
        if M is None and N is None:
            return mp_inverse(A, verify=verify)
        m, n = A.shape
        M = M if M is not None else QMatrix.identity(m, backend=A.backend)
        N = N if N is not None else QMatrix.identity(n, backend=A.backend)
        ctx = WeightedContext(A, M, N)
    A = ctx.A
    m, n = A.shape
    r = ctx.r
    other = None
    if r == 0:
        ctx.last_branch = "zero"
        X = QMatrix.zeros(n, m, backend=A.backend)
    elif ctx.col_hermitian:
        ctx.last_branch = "hermitian-column"
        X = _wmp_hermitian_col(ctx)
        if verify and ctx.row_hermitian:
            other = ("hermitian row route", _wmp_hermitian_row(ctx))
    elif ctx.row_hermitian:
        ctx.last_branch = "hermitian-row"
        X = _wmp_hermitian_row(ctx)
    elif r == n:
        ctx.last_branch = "plain-column-full"
        X = _wmp_plain_col_full(ctx)
        if verify and r == m:
            other = ("plain row route", _wmp_plain_row_full(ctx))
    elif r == m:
        ctx.last_branch = "plain-row-full"
        X = _wmp_plain_row_full(ctx)
    else:
        ctx.last_branch = "root-deficient"
        # the column route needs only N^(-1/2) and the row route only
        # M^(1/2); on the exact backend one may exist without the other
        try:
            X = _wmp_root_deficient_col(ctx)
            took_col = True
        except MissingSquareRoot:
            X = _wmp_root_deficient_row(ctx)
            took_col = False
        if verify:
            try:
                alt = (_wmp_root_deficient_row(ctx) if took_col
                       else _wmp_root_deficient_col(ctx))
                other = ("the two root routes", alt)
            except MissingSquareRoot:
                other = None  # only one root exists; equations still checked
    if verify:
        if other is not None:
            _agree(X, other[1], "weighted inverse routes (%s)" % other[0])
        _check_penrose(A, X, weighted_penrose_residuals(A, X, ctx.M, ctx.N))
    return X
