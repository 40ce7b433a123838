"""Complex-adjoint oracle: an independent numerical route for cross-checks.

A quaternion a0 + a1 i + a2 j + a3 k embeds as the 2 x 2 complex block

    [ a0 + a1*1j    a2 + a3*1j ]
    [-a2 + a3*1j    a0 - a1*1j ]

and a quaternion matrix embeds block-entrywise, so an m x n matrix becomes
a 2m x 2n complex one.  The embedding is a *-homomorphism: it turns
quaternion products, sums, and conjugate transposes into the complex ones.
Everything numerical in this module therefore reduces to standard complex
dense linear algebra, which is exactly what makes it a trustworthy
independent oracle for the minor-sum formulas implemented elsewhere.  This
is the only module that imports numpy.

Images of quaternion matrices are the complex matrices C satisfying
C = J conj(C) J^T block-wise (J is the block-diagonal matrix of 2 x 2
rotations [[0, 1], [-1, 0]]); chi_inv checks that structure before reading
a quaternion matrix back out.  All functions here compute in float: exact
inputs are converted on entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NotAQuaternionImage,
    NotHermitian,
    NumericalInconsistency,
    WeightNotHPD,
)
from .matrices import QMatrix
from .scalars import F64, Quaternion


def chi(A):
    """Complex adjoint of a quaternion matrix, as a 2m x 2n numpy array."""
    Af = A.to_float()
    m, n = Af.shape
    C = np.zeros((2 * m, 2 * n), dtype=complex)
    for r in range(m):
        for c in range(n):
            q = Af[r + 1, c + 1]
            a0, a1, a2, a3 = q.components()
            C[2 * r, 2 * c] = complex(a0, a1)
            C[2 * r, 2 * c + 1] = complex(a2, a3)
            C[2 * r + 1, 2 * c] = complex(-a2, a3)
            C[2 * r + 1, 2 * c + 1] = complex(a0, -a1)
    return C


def _j_mat(k):
    J = np.zeros((2 * k, 2 * k))
    for t in range(k):
        J[2 * t, 2 * t + 1] = 1.0
        J[2 * t + 1, 2 * t] = -1.0
    return J


def chi_inv(C, tol=None):
    """Read a quaternion matrix back out of its complex adjoint.

    Validates the block structure first (raising NotAQuaternionImage for a
    complex matrix that is not close to any quaternion image) and then
    extracts each entry from the symmetrized block, which averages away
    floating-point asymmetry.
    """
    C = np.asarray(C, dtype=complex)
    if C.ndim != 2 or C.shape[0] % 2 or C.shape[1] % 2:
        raise NotAQuaternionImage(
            "expected even-dimensioned 2D array, got shape %r" % (C.shape,)
        )
    m, n = C.shape[0] // 2, C.shape[1] // 2
    scale = max(1.0, float(np.abs(C).max()) if C.size else 0.0)
    if tol is None:
        tol = 1e-6 * scale
    structured = _j_mat(m) @ C.conj() @ _j_mat(n).T
    dev = float(np.abs(C - structured).max()) if C.size else 0.0
    if dev > tol:
        raise NotAQuaternionImage(
            "block structure violated by %.3g (tolerance %.3g)" % (dev, tol)
        )
    rows = []
    for r in range(m):
        row = []
        for c in range(n):
            b = C[2 * r : 2 * r + 2, 2 * c : 2 * c + 2]
            row.append(
                Quaternion(
                    float(b[0, 0].real + b[1, 1].real) / 2.0,
                    float(b[0, 0].imag - b[1, 1].imag) / 2.0,
                    float(b[0, 1].real - b[1, 0].real) / 2.0,
                    float(b[0, 1].imag + b[1, 0].imag) / 2.0,
                )
            )
        rows.append(row)
    return QMatrix.from_rows(rows)


# -- spectral helpers --------------------------------------------------------------

def eig_hermitian(W):
    """Eigendecomposition of a Hermitian quaternion matrix.

    Returns (values, U): the real eigenvalues ascending and a unitary
    quaternion matrix of corresponding eigenvectors, W = U diag(values) U*.
    The complex adjoint of a Hermitian matrix is Hermitian with every
    eigenvalue doubled; each complex eigenvector pair collapses to one
    quaternion column.
    """
    if not W.is_hermitian():
        raise NotHermitian("eigendecomposition requires a Hermitian matrix")
    C = chi(W)
    C = 0.5 * (C + C.conj().T)
    pairs = list(reversed(_symplectic_eigcolumns(C, W.m)))
    vals = [lam for lam, _ in pairs]
    U = _from_columns([_quaternion_column(v) for _, v in pairs], W.m)
    return vals, U


def rank_oracle(A):
    """Numerical rank from the singular values of the complex adjoint.

    The adjoint doubles every singular value's multiplicity, so the count
    above the noise threshold is halved.
    """
    C = chi(A)
    s = np.linalg.svd(C, compute_uv=False)
    if s.size == 0 or s[0] <= 0.0:
        return 0
    tau = 2.0 * max(C.shape) * np.finfo(float).eps * float(s[0])
    return int((s > tau).sum()) // 2


def _chi_hpd_power(W, power, name="weight"):
    """chi(W)^power for Hermitian positive definite W, in adjoint space."""
    C = chi(W)
    C = 0.5 * (C + C.conj().T)
    vals, vecs = np.linalg.eigh(C)
    if vals.size and vals.min() <= 1e-12 * max(1.0, float(vals.max())):
        raise WeightNotHPD("%s has a nonpositive eigenvalue" % name)
    return (vecs * vals**power) @ vecs.conj().T


def hpd_sqrt_oracle(W, name="weight"):
    """Hermitian positive definite square root, via the complex adjoint."""
    return chi_inv(_chi_hpd_power(W, 0.5, name))


# -- pseudoinverse oracles ----------------------------------------------------------

def _paired_pinv(B, floor=0.0):
    """Pseudoinverse of a complex matrix that is the image of a quaternion one.

    Such a matrix carries every singular value twice.  The rank decision uses
    an absolute threshold scaled by `floor` (a norm bound on however B was
    formed, which can exceed B's own largest singular value after cancellation)
    and never keeps an odd count, so a noise-level pair is dropped or kept as
    a unit instead of being split by a relative cutoff.
    """
    if B.size == 0:
        return B.conj().T
    U, s, Vh = np.linalg.svd(B)
    scale = max(float(s[0]), float(floor))
    tau = 2.0 * max(B.shape) * np.finfo(float).eps * scale
    r = int((s > tau).sum())
    if r % 2:
        r -= 1
    if r == 0:
        return np.zeros_like(B.conj().T)
    return (Vh[:r].conj().T / s[:r]) @ U[:, :r].conj().T


def pinv_oracle(A):
    """Moore-Penrose inverse through the complex adjoint."""
    return chi_inv(_paired_pinv(chi(A)))


def wpinv_oracle(A, M=None, N=None):
    """Weighted Moore-Penrose inverse through the complex adjoint.

    Computes N^(-1/2) pinv(M^(1/2) A N^(-1/2)) M^(1/2) entirely in adjoint
    space, with a single extraction at the end.  Omitted weights default to
    identities (plain Moore-Penrose).
    """
    Af = A.to_float()
    m, n = Af.shape
    Cm = _chi_hpd_power(M, 0.5, "left weight") if M is not None else np.eye(2 * m)
    Cn = _chi_hpd_power(N, -0.5, "right weight") if N is not None else np.eye(2 * n)
    if Cm.shape != (2 * m, 2 * m):
        raise DimensionMismatch("left weight must be %dx%d" % (m, m))
    if Cn.shape != (2 * n, 2 * n):
        raise DimensionMismatch("right weight must be %dx%d" % (n, n))
    Ca = chi(Af)
    floor = (np.linalg.norm(Cm, 2) * np.linalg.norm(Ca, 2)
             * np.linalg.norm(Cn, 2))
    X = Cn @ _paired_pinv(Cm @ Ca @ Cn, floor) @ Cm
    return chi_inv(X)


# -- weighted singular value decomposition -------------------------------------------

@dataclass
class WsvdFactors:
    """A = U @ D @ V.H with U* M U = I and V* N^(-1) V = I.

    D is m x n with the positive weighted singular values on its leading
    diagonal; sigma is those values as a tuple, descending; rank is their
    count.
    """

    U: QMatrix
    D: QMatrix
    V: QMatrix
    sigma: tuple
    rank: int


def _symplectic_eigcolumns(C, n):
    """Orthonormal eigencolumn representatives of a Hermitian quaternion image.

    The 2n eigenvectors of a structured Hermitian matrix come in pairs
    (v, J conj(v)) spanning one quaternion direction each.  Walking the
    spectrum in descending order and projecting out everything already
    selected keeps exactly one representative per pair; the selected family
    is closed under the pairing, which is what makes the extracted
    quaternion columns orthonormal.  Returns n (eigenvalue, vector) pairs.
    """
    vals, vecs = np.linalg.eigh(C)
    Jn = _j_mat(n)
    sel = np.zeros((2 * n, 0), dtype=complex)
    out = []
    for idx in np.argsort(vals)[::-1]:
        if len(out) == n:
            break
        u = vecs[:, idx].astype(complex)
        if sel.shape[1]:
            u = u - sel @ (sel.conj().T @ u)
            u = u - sel @ (sel.conj().T @ u)
        nrm = float(np.linalg.norm(u))
        if nrm < 0.5:
            continue
        v = u / nrm
        out.append((float(vals[idx]), v))
        sel = np.concatenate([sel, v[:, None], (Jn @ v.conj())[:, None]], axis=1)
    if len(out) != n:
        raise NumericalInconsistency(
            "eigenvector pairing collapsed: %d of %d directions found"
            % (len(out), n)
        )
    return out


def _quaternion_column(v):
    """Quaternion column (as a list) from one complex pair representative."""
    n = v.size // 2
    return [
        Quaternion(
            float(v[2 * t].real),
            float(v[2 * t].imag),
            float(-v[2 * t + 1].real),
            float(v[2 * t + 1].imag),
        )
        for t in range(n)
    ]


def _qdot(x, y):
    """Right inner product of quaternion columns: sum of conj(x_i) * y_i."""
    total = x[0].conj() * y[0]
    for a, b in zip(x[1:], y[1:]):
        total = total + a.conj() * b
    return total


def _complete_orthonormal(cols, m):
    """Extend orthonormal quaternion columns to a full basis of H^m."""
    basis = [list(c) for c in cols]
    zero = Quaternion(0.0, 0.0, 0.0, 0.0)
    one = Quaternion(1.0, 0.0, 0.0, 0.0)
    for t in range(m):
        if len(basis) == m:
            break
        v = [zero] * m
        v[t] = one
        for _ in range(2):
            for u in basis:
                coef = _qdot(u, v)
                v = [vi - ui * coef for vi, ui in zip(v, u)]
        nrm = math.sqrt(max(_qdot(v, v).real, 0.0))
        if nrm > 1e-8:
            basis.append([vi / nrm for vi in v])
    if len(basis) != m:
        raise NumericalInconsistency("could not complete an orthonormal basis")
    return basis


def _from_columns(cols, m):
    return QMatrix.from_rows([[col[r] for col in cols] for r in range(m)])


def wsvd(A, M=None, N=None):
    """Weighted singular value decomposition, A = U D V* (float).

    U is M-unitary (U* M U = I), V is N^(-1)-unitary (V* N^(-1) V = I), and
    the squared singular values are the nonzero eigenvalues of the weighted
    Gram matrix N^(-1) A* M A.  Computed from a structured eigendecomposition
    of the adjoint of the root-weighted matrix M^(1/2) A N^(-1/2); omitted
    weights default to identities (an ordinary SVD).
    """
    Af = A.to_float()
    m, n = Af.shape
    Mf = M.to_float() if M is not None else QMatrix.identity(m, backend=F64)
    Nf = N.to_float() if N is not None else QMatrix.identity(n, backend=F64)
    mh = chi_inv(_chi_hpd_power(Mf, 0.5, "left weight"))
    minvh = chi_inv(_chi_hpd_power(Mf, -0.5, "left weight"))
    ninvh = chi_inv(_chi_hpd_power(Nf, -0.5, "right weight"))
    nh = chi_inv(_chi_hpd_power(Nf, 0.5, "right weight"))
    At = mh @ Af @ ninvh

    G = chi(At.H @ At)
    G = 0.5 * (G + G.conj().T)
    pairs = _symplectic_eigcolumns(G, n)
    sigma_all = [math.sqrt(max(lam, 0.0)) for lam, _ in pairs]
    # rank from the unsquared matrix: Gram eigenvalue noise is eps-level,
    # which after a square root would dwarf the singular-value threshold
    r = min(rank_oracle(At), m, n)

    v_cols = [_quaternion_column(v) for _, v in pairs]
    Vt = _from_columns(v_cols, n)
    u_cols = []
    for t in range(r):
        image = At @ _from_columns([v_cols[t]], n)
        u_cols.append([image[row + 1, 1] / sigma_all[t] for row in range(m)])
    Ut = _from_columns(_complete_orthonormal(u_cols, m), m)

    sigma = tuple(sigma_all[:r])
    rows = [
        [
            Quaternion(sigma[i], 0.0, 0.0, 0.0) if (i == j and i < r)
            else Quaternion(0.0, 0.0, 0.0, 0.0)
            for j in range(n)
        ]
        for i in range(m)
    ]
    return WsvdFactors(
        U=minvh @ Ut,
        D=QMatrix.from_rows(rows),
        V=nh @ Vt,
        sigma=sigma,
        rank=r,
    )
