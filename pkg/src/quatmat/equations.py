"""Cramer-style solvers for restricted quaternion matrix equations.

solve_axb / solve_ax / solve_xb treat AXB = D (resp. AX = D, XB = D) under
range and kernel restrictions tied to HPD weight pairs: (M, N) on the A
side, (P, Q) on the B side.  The restricted solution is the one that equals
``wmp_inverse(A) @ D @ wmp_inverse(B)``, but it is computed entrywise by
minor sums without forming either inverse; verification mode recomputes it
along every alternative route and insists they agree.

Each side of the equation reduces to one *side operator* with three
ingredients: a ``factor`` folded into the transformed right-hand side
D~ = factor_A @ D @ factor_B, a real ``denominator``, and an ``apply``
rule that substitutes a vector into the side's Gram matrix at one index
and takes minor sums there.  A two-sided solve is then two nested
applications, and the two nesting orders (inner B-side first, or inner
A-side first) produce the same matrix.

The ingredients per side follow the same three-family split as the
weighted inverse: a Hermitian weighted Gram uses index-restricted minor
sums of that Gram directly; otherwise the full-rank case uses the plain
Gram (A* M A on the left, B Q^(-1) B* on the right) with determinant
denominators, and the deficient case conjugates the plain Gram by one
weight root and mixes the per-index sums with that root's entries.
"""

from __future__ import annotations

import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import (
    BackendMismatch,
    DimensionMismatch,
    NumericalInconsistency,
    SolvabilityWarning,
)
from .inverses import WeightedContext, wmp_inverse
from .matrices import QMatrix, as_quaternion
from .rowcoldet import (
    det_hermitian,
    principal_minor_sum,
    principal_minor_sum_fixed,
)
from .scalars import RATIONAL


# -- side operators ----------------------------------------------------------------

class _ColumnSide:
    """The A side: minor sums over an n x n Gram, indexed by columns.

    ``factor`` is n x m and multiplies the right-hand side from the left;
    ``apply(vec, i)`` substitutes ``vec`` (length n) as column ``i`` of the
    Gram and returns the rank-restricted minor sum, with the root's row
    coefficients mixed in from the left in the deficient non-Hermitian case.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        m, n = ctx.A.shape
        self.size = n
        self.rank = ctx.r
        self.coeff = None
        if ctx.r == 0:
            self.label = "zero"
            self.factor = None
            self.denominator = None
            self.gram = None
        elif ctx.col_hermitian:
            self.label = "hermitian"
            self.gram = ctx.gram_col
            self.denominator = principal_minor_sum(self.gram, ctx.r)
            self.factor = ctx.adjoint
        elif ctx.r == n:
            self.label = "plain-full"
            self.gram = ctx.col_gram_plain()
            self.denominator = det_hermitian(self.gram)
            self.factor = ctx.A.H @ ctx.M
        else:
            self.label = "root-deficient"
            ninv2 = ctx.get_n_inv_sqrt()
            self.gram = ninv2 @ ctx.col_gram_plain() @ ninv2
            self.denominator = principal_minor_sum(self.gram, ctx.r)
            self.factor = ninv2 @ ctx.A.H @ ctx.M
            self.coeff = ninv2

    def apply(self, vec, i):
        if self.coeff is None:
            return principal_minor_sum_fixed(self.gram, self.rank, i=i, col=vec)
        total = as_quaternion(0, self.gram.backend)
        for k in range(1, self.size + 1):
            c = self.coeff[i, k]
            if c.is_zero():
                continue
            total = total + c * principal_minor_sum_fixed(
                self.gram, self.rank, i=k, col=vec
            )
        return total


class _RowSide:
    """The B side: minor sums over a p x p Gram, indexed by rows (mirror).

    ``factor`` is q x p and multiplies the right-hand side from the right;
    ``apply(vec, j)`` substitutes ``vec`` (length p) as row ``j`` of the
    Gram, with root coefficients mixed in from the right when deficient.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        p, _q = ctx.A.shape
        self.size = p
        self.rank = ctx.r
        self.coeff = None
        if ctx.r == 0:
            self.label = "zero"
            self.factor = None
            self.denominator = None
            self.gram = None
        elif ctx.row_hermitian:
            self.label = "hermitian"
            self.gram = ctx.gram_row
            self.denominator = principal_minor_sum(self.gram, ctx.r)
            self.factor = ctx.adjoint
        elif ctx.r == p:
            self.label = "plain-full"
            self.gram = ctx.row_gram_plain()
            self.denominator = det_hermitian(self.gram)
            self.factor = ctx.n_inv @ ctx.A.H
        else:
            self.label = "root-deficient"
            ph = ctx.get_m_sqrt()
            self.gram = ph @ ctx.row_gram_plain() @ ph
            self.denominator = principal_minor_sum(self.gram, ctx.r)
            self.factor = ctx.n_inv @ ctx.A.H @ ph
            self.coeff = ph

    def apply(self, vec, j):
        if self.coeff is None:
            return principal_minor_sum_fixed(self.gram, self.rank, j=j, row=vec)
        total = as_quaternion(0, self.gram.backend)
        for l in range(1, self.size + 1):
            c = self.coeff[l, j]
            if c.is_zero():
                continue
            total = total + principal_minor_sum_fixed(
                self.gram, self.rank, j=l, row=vec
            ) * c
        return total


# -- the equation and its options ----------------------------------------------------

_KINDS = ("two_sided", "left", "right")


@dataclass
class RestrictedEquation:
    """One restricted equation: AXB = D (two_sided), AX = D (left), XB = D (right).

    Weights default to identities of the matching sizes.  kind "left" takes
    no B, P, Q; kind "right" no A, M, N.  The optional roots feed the
    exact-backend deficient branches when the closed-form block square root
    does not exist: m_sqrt = M^(1/2), n_inv_sqrt = N^(-1/2), p_sqrt = P^(1/2).
    """

    kind: str
    A: "QMatrix | None" = None
    B: "QMatrix | None" = None
    D: "QMatrix | None" = None
    M: "QMatrix | None" = None
    N: "QMatrix | None" = None
    P: "QMatrix | None" = None
    Q: "QMatrix | None" = None
    m_sqrt: "QMatrix | None" = None
    n_inv_sqrt: "QMatrix | None" = None
    p_sqrt: "QMatrix | None" = None
    _ctx_a: WeightedContext = field(init=False, default=None, repr=False, compare=False)
    _ctx_b: WeightedContext = field(init=False, default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError("kind must be one of %s, got %r" % (_KINDS, self.kind))
        if self.D is None:
            raise ValueError("a right-hand side D is required")
        if self.kind != "right" and self.A is None:
            raise ValueError("kind %r requires A" % self.kind)
        if self.kind != "left" and self.B is None:
            raise ValueError("kind %r requires B" % self.kind)
        backend = self.D.backend
        for name in ("A", "B", "M", "N", "P", "Q", "m_sqrt", "n_inv_sqrt", "p_sqrt"):
            T = getattr(self, name)
            if T is not None and T.backend != backend:
                raise BackendMismatch(
                    "%s is %s but D is %s" % (name, T.backend, backend)
                )
        if self.A is not None:
            m, n = self.A.shape
            if self.D.m != m:
                raise DimensionMismatch(
                    "D has %d rows but A has %d" % (self.D.m, m)
                )
            if self.M is None:
                self.M = QMatrix.identity(m, backend=backend)
            if self.N is None:
                self.N = QMatrix.identity(n, backend=backend)
        if self.B is not None:
            p, q = self.B.shape
            if self.D.n != q:
                raise DimensionMismatch(
                    "D has %d columns but B has %d" % (self.D.n, q)
                )
            if self.P is None:
                self.P = QMatrix.identity(p, backend=backend)
            if self.Q is None:
                self.Q = QMatrix.identity(q, backend=backend)

    @property
    def x_shape(self):
        rows = self.A.n if self.A is not None else self.D.m
        cols = self.B.m if self.B is not None else self.D.n
        return rows, cols

    def a_context(self):
        if self.A is None:
            return None
        if self._ctx_a is None:
            self._ctx_a = WeightedContext(
                self.A, self.M, self.N,
                m_sqrt=self.m_sqrt, n_inv_sqrt=self.n_inv_sqrt,
            )
        return self._ctx_a

    def b_context(self):
        if self.B is None:
            return None
        if self._ctx_b is None:
            self._ctx_b = WeightedContext(self.B, self.P, self.Q, m_sqrt=self.p_sqrt)
        return self._ctx_b


@dataclass
class SolveOptions:
    """Knobs for a solve.

    verification recomputes the solution along every alternative route
    (other nesting order, composition through the weighted inverses) and
    raises NumericalInconsistency on disagreement.  tolerance overrides the
    float-backend comparison scale; the exact backend always compares
    exactly.  threads > 1 distributes independent output rows/columns over
    a thread pool (placement is deterministic either way).
    """

    verification: bool = False
    tolerance: "float | None" = None
    threads: int = 1


@dataclass
class SolveReport:
    """What a solve returns: the solution plus how it was computed.

    residual_primary is the max-abs entry of the equation residual
    (A@X@B - D or the one-sided variant).  restriction_residual is the
    range check: the max-abs entry of A A^dag D B^dag B - D, zero exactly
    when D lies in the solvable set; solvable records that verdict, and
    when it is False a SolvabilityWarning was issued and X is the unique
    restricted candidate rather than a solution.  route_deviation is the
    largest disagreement between alternative computation routes (None
    outside verification mode).
    """

    X: QMatrix
    kind: str
    method: dict
    hermitian_profile: tuple
    ranks: tuple
    solvable: bool
    residual_primary: float
    restriction_residual: float
    route_deviation: "float | None"
    wall_time: float
    diagnostics: dict


# -- profile helpers ---------------------------------------------------------------

def hermitian_profile(eq):
    """Which formula family each side selects, as a pair of labels.

    The A side keys on whether N^(-1) A* M A is Hermitian, the B side on
    whether B Q^(-1) B* P is; an absent side reports None.
    """
    a = b = None
    if eq.A is not None:
        a = "hermitian" if eq.a_context().col_hermitian else "non-hermitian"
    if eq.B is not None:
        b = "hermitian" if eq.b_context().row_hermitian else "non-hermitian"
    return a, b


def rank_case(eq):
    """Rank classification per side: "zero", "deficient", or "full".

    "full" means the rank reaches the dimension the solve indexes over
    (columns of A, rows of B), which is what admits the root-free plain
    forms; an absent side reports None.
    """
    a = b = None
    if eq.A is not None:
        r = eq.a_context().r
        a = "zero" if r == 0 else ("full" if r == eq.A.n else "deficient")
    if eq.B is not None:
        r = eq.b_context().r
        b = "zero" if r == 0 else ("full" if r == eq.B.m else "deficient")
    return a, b


# -- the solver --------------------------------------------------------------------

def _pmap(fn, items, threads):
    items = list(items)
    if threads and threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _deviation(X, Y, what, options):
    dev = (X - Y).max_abs()
    if X.backend == RATIONAL:
        if X != Y:
            raise NumericalInconsistency("%s disagree on the exact backend" % what)
    else:
        tol = options.tolerance
        if tol is None:
            tol = 1e-9 * max(1.0, X.max_abs(), Y.max_abs())
        if not X.approx_eq(Y, tol):
            raise NumericalInconsistency(
                "%s disagree beyond tolerance %.3g" % (what, tol)
            )
    return dev


def _solve_two_sided(eq, options):
    aop = _ColumnSide(eq.a_context())
    bop = _RowSide(eq.b_context())
    n, p = aop.size, bop.size
    backend = eq.D.backend
    method = {"a_side": aop.label, "b_side": bop.label}
    if aop.rank == 0 or bop.rank == 0:
        method["route"] = "zero"
        return QMatrix.zeros(n, p, backend=backend), method, None

    method["a_denominator"] = aop.denominator
    method["b_denominator"] = bop.denominator
    Dt = aop.factor @ eq.D @ bop.factor
    den = aop.denominator * bop.denominator

    def inner_b():
        # B-side minor sums down the rows of D~ give one column of inner
        # values, then one A-side application per output row
        def build_col(j):
            col = [bop.apply(Dt.row(k), j) for k in range(1, n + 1)]
            return [aop.apply(col, i) / den for i in range(1, n + 1)]

        cols = _pmap(build_col, range(1, p + 1), options.threads)
        return QMatrix.from_rows([[cols[j][i] for j in range(p)] for i in range(n)])

    def inner_a():
        # same nesting the other way around
        def build_row(i):
            row = [aop.apply(Dt.column(l), i) for l in range(1, p + 1)]
            return [bop.apply(row, j) / den for j in range(1, p + 1)]

        return QMatrix.from_rows(_pmap(build_row, range(1, n + 1), options.threads))

    # the inner family is smaller when its side has fewer indices
    if n <= p:
        primary, alternate = ("inner-b", inner_b), ("inner-a", inner_a)
    else:
        primary, alternate = ("inner-a", inner_a), ("inner-b", inner_b)
    X = primary[1]()
    method["route"] = primary[0]
    deviation = None
    if options.verification:
        alt = alternate[1]()
        deviation = _deviation(X, alt, "the two nesting orders", options)
        method["routes_checked"] = [primary[0], alternate[0], "composition"]
    return X, method, deviation


def _solve_one_sided(eq, options):
    backend = eq.D.backend
    if eq.kind == "left":
        aop = _ColumnSide(eq.a_context())
        n, p = aop.size, eq.D.n
        method = {"a_side": aop.label, "b_side": None, "route": "a-only"}
        if aop.rank == 0:
            method["route"] = "zero"
            return QMatrix.zeros(n, p, backend=backend), method, None
        Dt = aop.factor @ eq.D
        den = aop.denominator
        method["a_denominator"] = den

        def build_col(j):
            col = Dt.column(j)
            return [aop.apply(col, i) / den for i in range(1, n + 1)]

        cols = _pmap(build_col, range(1, p + 1), options.threads)
        X = QMatrix.from_rows([[cols[j][i] for j in range(p)] for i in range(n)])
    else:
        bop = _RowSide(eq.b_context())
        n, p = eq.D.m, bop.size
        method = {"a_side": None, "b_side": bop.label, "route": "b-only"}
        if bop.rank == 0:
            method["route"] = "zero"
            return QMatrix.zeros(n, p, backend=backend), method, None
        Dt = eq.D @ bop.factor
        den = bop.denominator
        method["b_denominator"] = den

        def build_row(i):
            row = Dt.row(i)
            return [bop.apply(row, j) / den for j in range(1, p + 1)]

        X = QMatrix.from_rows(_pmap(build_row, range(1, n + 1), options.threads))

    deviation = None
    if options.verification:
        # the same equation as a two-sided solve with an identity other side
        if eq.kind == "left":
            eye = QMatrix.identity(p, backend=backend)
            twin = RestrictedEquation(
                kind="two_sided", A=eq.A, B=eye, D=eq.D, M=eq.M, N=eq.N,
                m_sqrt=eq.m_sqrt, n_inv_sqrt=eq.n_inv_sqrt,
            )
        else:
            eye = QMatrix.identity(n, backend=backend)
            twin = RestrictedEquation(
                kind="two_sided", A=eye, B=eq.B, D=eq.D, P=eq.P, Q=eq.Q,
                p_sqrt=eq.p_sqrt,
            )
        alt, _, _ = _solve_two_sided(twin, SolveOptions(threads=options.threads))
        deviation = _deviation(X, alt, "one-sided and padded two-sided solves", options)
        method["routes_checked"] = [method["route"], "padded-two-sided", "composition"]
    return X, method, deviation


def solve(eq, options=None):
    """Solve a RestrictedEquation; returns a SolveReport.

    The returned X always satisfies the range/kernel restrictions.  It
    satisfies the equation itself exactly when D lies in the solvable set;
    otherwise a SolvabilityWarning is issued, report.solvable is False, and
    X is the unique restricted candidate (the weighted-inverse composition).
    """
    options = options or SolveOptions()
    t0 = time.perf_counter()
    if eq.kind == "two_sided":
        X, method, deviation = _solve_two_sided(eq, options)
    else:
        X, method, deviation = _solve_one_sided(eq, options)

    ctx_a, ctx_b = eq.a_context(), eq.b_context()
    a_dag = wmp_inverse(ctx=ctx_a) if ctx_a is not None else None
    b_dag = wmp_inverse(ctx=ctx_b) if ctx_b is not None else None

    if options.verification:
        comp = eq.D
        if a_dag is not None:
            comp = a_dag @ comp
        if b_dag is not None:
            comp = comp @ b_dag
        dev = _deviation(X, comp, "minor-sum solve and inverse composition", options)
        deviation = dev if deviation is None else max(deviation, dev)

    # range check: project D through the weighted inverses and compare
    proj = eq.D
    if a_dag is not None:
        proj = eq.A @ (a_dag @ proj)
    if b_dag is not None:
        proj = (proj @ b_dag) @ eq.B
    restriction_residual = (proj - eq.D).max_abs()
    if eq.D.backend == RATIONAL:
        solvable = proj == eq.D
    else:
        tol = options.tolerance
        if tol is None:
            tol = 1e-8 * max(1.0, eq.D.max_abs())
        solvable = restriction_residual <= tol
    if not solvable:
        warnings.warn(
            SolvabilityWarning(
                "right-hand side is outside the solvable set "
                "(projection gap %.3g); returning the unique restricted "
                "candidate" % restriction_residual
            ),
            stacklevel=2,
        )

    lhs = X
    if eq.A is not None:
        lhs = eq.A @ lhs
    if eq.B is not None:
        lhs = lhs @ eq.B
    residual_primary = (lhs - eq.D).max_abs()

    # X itself always lies in the restricted spaces: projecting it onto
    # them must be a no-op
    projected = X
    if a_dag is not None:
        projected = (a_dag @ eq.A) @ projected
    if b_dag is not None:
        projected = projected @ (eq.B @ b_dag)
    candidate_projection = (projected - X).max_abs()

    ranks = (
        ctx_a.r if ctx_a is not None else None,
        ctx_b.r if ctx_b is not None else None,
    )
    diagnostics = {
        "a_denominator": method.pop("a_denominator", None),
        "b_denominator": method.pop("b_denominator", None),
        "a_branch": method.get("a_side"),
        "b_branch": method.get("b_side"),
        "candidate_projection_residual": candidate_projection,
        "backend": eq.D.backend,
    }
    return SolveReport(
        X=X,
        kind=eq.kind,
        method=method,
        hermitian_profile=hermitian_profile(eq),
        ranks=ranks,
        solvable=solvable,
        residual_primary=residual_primary,
        restriction_residual=restriction_residual,
        route_deviation=deviation,
        wall_time=time.perf_counter() - t0,
        diagnostics=diagnostics,
    )


def _as_equation(first, kind, **fields):
    if isinstance(first, RestrictedEquation):
        if first.kind != kind:
            raise ValueError(
                "equation has kind %r, expected %r" % (first.kind, kind)
            )
        return first
    return RestrictedEquation(kind=kind, **fields)


def solve_axb(A, B=None, D=None, M=None, N=None, P=None, Q=None, options=None,
              m_sqrt=None, n_inv_sqrt=None, p_sqrt=None):
    """Restricted solution of AXB = D with weights (M, N) and (P, Q).

    Accepts either a prepared two-sided RestrictedEquation as the single
    first argument or the matrices directly.
    """
    eq = _as_equation(
        A, "two_sided", A=A, B=B, D=D, M=M, N=N, P=P, Q=Q,
        m_sqrt=m_sqrt, n_inv_sqrt=n_inv_sqrt, p_sqrt=p_sqrt,
    )
    return solve(eq, options)


def solve_ax(A, D=None, M=None, N=None, options=None, m_sqrt=None,
             n_inv_sqrt=None):
    """Restricted solution of AX = D with weights (M, N)."""
    eq = _as_equation(
        A, "left", A=A, D=D, M=M, N=N,
        m_sqrt=m_sqrt, n_inv_sqrt=n_inv_sqrt,
    )
    return solve(eq, options)


def solve_xb(B, D=None, P=None, Q=None, options=None, p_sqrt=None):
    """Restricted solution of XB = D with weights (P, Q)."""
    eq = _as_equation(B, "right", B=B, D=D, P=P, Q=Q, p_sqrt=p_sqrt)
    return solve(eq, options)
