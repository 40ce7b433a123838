"""Random instance generators shared by the test modules.

Everything takes an explicit random.Random so failures reproduce from the
seed; the profile builders construct (A, M, N) triples that land in a
prescribed dispatch family of the weighted inverse / solver sides.
"""

from fractions import Fraction
from itertools import count

from quatmat import QMatrix, gauss_inverse, rank
from quatmat.scalars import Quaternion


def rq(rng, span=2, dens=(1, 1, 2)):
    """Random rational quaternion with small numerators and denominators."""
    return Quaternion(*(
        Fraction(rng.randint(-span, span), rng.choice(dens)) for _ in range(4)
    ))


def rmat(rng, m, n, span=2, dens=(1, 1, 2)):
    return QMatrix.from_rows(
        [[rq(rng, span, dens) for _ in range(n)] for _ in range(m)]
    )


def rmat_f(rng, m, n, span=2.0):
    return QMatrix.from_rows(
        [[Quaternion(*(rng.uniform(-span, span) for _ in range(4)))
          for _ in range(n)] for _ in range(m)]
    )


def hermitian(rng, n, span=2):
    A = rmat(rng, n, n, span)
    return A + A.H


def hpd(rng, n, span=1):
    """G G* + I: exactly Hermitian positive definite."""
    G = rmat(rng, n, n, span)
    return G @ G.H + QMatrix.identity(n)


def rank_mat(rng, m, n, r, span=1):
    """Random m x n of exact rank r."""
    if r == 0:
        return QMatrix.zeros(m, n)
    for _ in count():
        A = rmat(rng, m, r, span) @ rmat(rng, r, n, span)
        if rank(A) == r:
            return A


def invertible(rng, n, span=2):
    for _ in count():
        A = rmat(rng, n, n, span)
        if rank(A) == n:
            return A


def singular(rng, n, span=1):
    return rank_mat(rng, n, n, rng.randint(0, n - 1), span)


def sq_diag(rng, n):
    """Diagonal HPD whose entries are perfect squares of rationals, so the
    exact backend has closed-form roots for it and for its inverse."""
    vals = [Fraction(rng.randint(1, 3), rng.choice((1, 2))) ** 2
            for _ in range(n)]
    return QMatrix.diag([Quaternion(v) for v in vals])


def rootless_diag(rng, n):
    """Diagonal HPD with no rational square root (prime entries)."""
    return QMatrix.diag([Quaternion(rng.choice((2, 3, 5))) for _ in range(n)])


# -- dispatch-family builders ---------------------------------------------------
#
# Column family (indexes the n columns of A, rank compared to n):
#   hermitian       N^(-1) A* M A Hermitian, any rank
#   plain-full      rank = n, no Hermitian gram
#   root-deficient  rank < n, no Hermitian gram, N^(-1/2) available exactly
#   zero            A = 0
# The row family mirrors this with rank compared to m and M^(1/2).  Each
# builder returns a kwargs dict for WeightedContext / RestrictedEquation.

def _grams(A, M, N):
    ninv = gauss_inverse(N)
    return ninv @ A.H @ M @ A, A @ ninv @ A.H @ M


def col_hermitian_instance(rng, m, n, r):
    """N = A*MA + I makes the column gram I - N^(-1): Hermitian for free."""
    for _ in count():
        A = rank_mat(rng, m, n, r)
        M = hpd(rng, m)
        N = A.H @ M @ A + QMatrix.identity(n)
        cg, rg = _grams(A, M, N)
        if cg.is_hermitian() and not rg.is_hermitian():
            return {"A": A, "M": M, "N": N}


def row_hermitian_instance(rng, m, n, r):
    """M = (A N^(-1) A* + I)^(-1) makes the row gram I - M: Hermitian."""
    for _ in count():
        A = rank_mat(rng, m, n, r)
        N = hpd(rng, n)
        M = gauss_inverse(A @ gauss_inverse(N) @ A.H + QMatrix.identity(m))
        cg, rg = _grams(A, M, N)
        if rg.is_hermitian() and not cg.is_hermitian():
            return {"A": A, "M": M, "N": N}


def plain_instance(rng, m, n, r, diag_weights=False):
    """No Hermitian gram; diag_weights=True uses perfect-square diagonals
    so the deficient branches have exact roots on the rational backend."""
    for _ in count():
        A = rank_mat(rng, m, n, r)
        if diag_weights:
            M, N = sq_diag(rng, m), sq_diag(rng, n)
        else:
            M, N = hpd(rng, m), hpd(rng, n)
        cg, rg = _grams(A, M, N)
        if not cg.is_hermitian() and not rg.is_hermitian():
            return {"A": A, "M": M, "N": N}


def plain_row_root_instance(rng, m, n, r):
    """Deficient with only M^(1/2) available exactly: N has no rational
    root, forcing the weighted inverse onto its row-side fallback."""
    for _ in count():
        A = rank_mat(rng, m, n, r)
        M, N = sq_diag(rng, m), rootless_diag(rng, n)
        cg, rg = _grams(A, M, N)
        if not cg.is_hermitian() and not rg.is_hermitian():
            return {"A": A, "M": M, "N": N}


def a_side(rng, family, m=3, n=2):
    """(A, M, N) landing in the requested column-side solver family."""
    if family == "zero":
        return {"A": QMatrix.zeros(m, n), "M": hpd(rng, m), "N": hpd(rng, n)}
    if family == "hermitian":
        return col_hermitian_instance(rng, m, n, r=n - 1)
    if family == "plain-full":
        return plain_instance(rng, m, n, r=n)
    if family == "root-deficient":
        return plain_instance(rng, m, n, r=n - 1, diag_weights=True)
    raise ValueError(family)


def b_side(rng, family, p=2, q=3):
    """(B, P, Q) landing in the requested row-side solver family."""
    if family == "zero":
        return {"B": QMatrix.zeros(p, q), "P": hpd(rng, p), "Q": hpd(rng, q)}
    if family == "hermitian":
        inst = row_hermitian_instance(rng, p, q, r=p - 1)
    elif family == "plain-full":
        inst = plain_instance(rng, p, q, r=p)
    elif family == "root-deficient":
        inst = plain_instance(rng, p, q, r=p - 1, diag_weights=True)
    else:
        raise ValueError(family)
    return {"B": inst["A"], "P": inst["M"], "Q": inst["N"]}


def to_float_fields(fields):
    """Float-backend copy of an instance dict (None entries pass through)."""
    return {k: (v.to_float() if isinstance(v, QMatrix) else v)
            for k, v in fields.items()}
