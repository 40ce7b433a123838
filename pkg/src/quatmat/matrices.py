"""Dense quaternion matrices and the structural helpers the formulas consume.

Matrices are immutable, row-major, and indexed 1-based at the API surface
(matching the determinant and minor notation they implement).  All entries of
one matrix share a scalar backend.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import BackendMismatch, DimensionMismatch, NonSquare
from .scalars import F64, RATIONAL, Quaternion, parse_quaternion


def as_quaternion(value, backend=None):
    """Coerce ints/Fractions/floats/strings/Quaternions into a Quaternion."""
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, str):
        return parse_quaternion(value, backend or RATIONAL)
    if isinstance(value, (list, tuple)):
        comps = value
        if backend == F64:
            comps = [float(c) if not isinstance(c, str) else float(Fraction(c)) for c in comps]
        else:
            comps = [Fraction(c) if not isinstance(c, float) else c for c in comps]
        return Quaternion(*comps)
    if backend == F64:
        return Quaternion(float(value))
    return Quaternion(value)


class QMatrix:
    """An m-by-n matrix of :class:`Quaternion` entries, all in one backend."""

    __slots__ = ("m", "n", "_e")

    def __init__(self, m, n, entries):
        entries = tuple(entries)
        if m < 1 or n < 1:
            raise DimensionMismatch("matrix dimensions must be positive, got %dx%d" % (m, n))
        if len(entries) != m * n:
            raise DimensionMismatch(
                "expected %d entries for a %dx%d matrix, got %d" % (m * n, m, n, len(entries))
            )
        backend = entries[0].backend
        for e in entries:
            if e.backend != backend:
                raise BackendMismatch("matrix entries mix scalar backends")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_e", entries)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix values are immutable")

    # -- construction --------------------------------------------------------
    @classmethod
    def from_rows(cls, rows, backend=None):
        m = len(rows)
        n = len(rows[0]) if m else 0
        flat = []
        for row in rows:
            if len(row) != n:
                raise DimensionMismatch("ragged rows")
            flat.extend(as_quaternion(v, backend) for v in row)
        return cls(m, n, flat)

    @classmethod
    def zeros(cls, m, n, backend=RATIONAL):
        zero = Quaternion(0.0) if backend == F64 else Quaternion(0)
        return cls(m, n, [zero] * (m * n))

    @classmethod
    def identity(cls, n, backend=RATIONAL):
        one = Quaternion(1.0) if backend == F64 else Quaternion(1)
        zero = Quaternion(0.0) if backend == F64 else Quaternion(0)
        return cls(n, n, [one if r == c else zero for r in range(n) for c in range(n)])

    @classmethod
    def diag(cls, values, backend=None):
        qs = [as_quaternion(v, backend) for v in values]
        n = len(qs)
        zero = Quaternion(0.0) if qs and qs[0].backend == F64 else Quaternion(0)
        return cls(n, n, [qs[r] if r == c else zero for r in range(n) for c in range(n)])

    # -- access (1-based) ------------------------------------------------------
    def __getitem__(self, key):
        i, j = key
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise IndexError("entry (%d,%d) outside %dx%d (1-based)" % (i, j, self.m, self.n))
        return self._e[(i - 1) * self.n + (j - 1)]

    def row(self, i):
        if not 1 <= i <= self.m:
            raise IndexError("row %d outside 1..%d" % (i, self.m))
        return self._e[(i - 1) * self.n:i * self.n]

    def column(self, j):
        if not 1 <= j <= self.n:
            raise IndexError("column %d outside 1..%d" % (j, self.n))
        return tuple(self._e[(r * self.n) + (j - 1)] for r in range(self.m))

    def rows(self):
        return [list(self.row(i)) for i in range(1, self.m + 1)]

    @property
    def backend(self):
        return self._e[0].backend

    @property
    def shape(self):
        return (self.m, self.n)

    def is_square(self):
        return self.m == self.n

    def to_float(self):
        return QMatrix(self.m, self.n, [e.to_float() for e in self._e])

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        self._same_shape(other)
        return QMatrix(self.m, self.n, [a + b for a, b in zip(self._e, other._e)])

    def __sub__(self, other):
        self._same_shape(other)
        return QMatrix(self.m, self.n, [a - b for a, b in zip(self._e, other._e)])

    def __neg__(self):
        return QMatrix(self.m, self.n, [-a for a in self._e])

    def _same_shape(self, other):
        if not isinstance(other, QMatrix):
            raise TypeError("expected QMatrix")
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch %s vs %s" % (self.shape, other.shape))

    def __matmul__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.n != other.m:
            raise DimensionMismatch(
                "cannot multiply %dx%d by %dx%d" % (self.m, self.n, other.m, other.n)
            )
        out = []
        for i in range(self.m):
            lrow = self._e[i * self.n:(i + 1) * self.n]
            for j in range(other.n):
                acc = None
                for t in range(self.n):
                    term = lrow[t] * other._e[t * other.n + j]
                    acc = term if acc is None else acc + term
                out.append(acc)
        return QMatrix(self.m, other.n, out)

    def scale_left(self, q):
        """q * A entrywise (order matters)."""
        q = as_quaternion(q, self.backend)
        return QMatrix(self.m, self.n, [q * e for e in self._e])

    def scale_right(self, q):
        """A * q entrywise."""
        q = as_quaternion(q, self.backend)
        return QMatrix(self.m, self.n, [e * q for e in self._e])

    # -- structure ---------------------------------------------------------------
    def conj_transpose(self):
        out = []
        for j in range(self.n):
            for i in range(self.m):
                out.append(self._e[i * self.n + j].conj())
        return QMatrix(self.n, self.m, out)

    @property
    def H(self):
        return self.conj_transpose()

    def is_hermitian(self, tol=None):
        if not self.is_square():
            raise NonSquare("Hermitian test requires a square matrix")
        if tol is None:
            tol = 0 if self.backend == RATIONAL else 1e-10 * max(1.0, self.max_abs())
        for i in range(1, self.m + 1):
            for j in range(i, self.n + 1):
                d = self[i, j] - self[j, i].conj()
                if tol == 0:
                    if not d.is_zero():
                        return False
                elif d.abs() > tol:
                    return False
        return True

    def replace_column(self, j, col):
        col = [as_quaternion(v, self.backend) for v in col]
        if len(col) != self.m:
            raise DimensionMismatch("replacement column has length %d, need %d" % (len(col), self.m))
        e = list(self._e)
        for r in range(self.m):
            e[r * self.n + (j - 1)] = col[r]
        return QMatrix(self.m, self.n, e)

    def replace_row(self, i, row):
        row = [as_quaternion(v, self.backend) for v in row]
        if len(row) != self.n:
            raise DimensionMismatch("replacement row has length %d, need %d" % (len(row), self.n))
        e = list(self._e)
        e[(i - 1) * self.n:i * self.n] = row
        return QMatrix(self.m, self.n, e)

    def submatrix(self, row_idx, col_idx):
        """Rows/columns selected by 1-based strictly increasing index tuples."""
        return QMatrix(
            len(row_idx), len(col_idx),
            [self[i, j] for i in row_idx for j in col_idx],
        )

    def delete_row_col(self, i, j):
        rows = tuple(r for r in range(1, self.m + 1) if r != i)
        cols = tuple(c for c in range(1, self.n + 1) if c != j)
        return self.submatrix(rows, cols)

    # -- comparison and size ------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.m, self.n, self._e))

    def approx_eq(self, other, tol):
        if self.shape != other.shape:
            return False
        return all(a.approx_eq(b, tol) for a, b in zip(self._e, other._e))

    def max_abs(self):
        """Largest entry magnitude as a float (tolerance scaling)."""
        return max(e.abs() for e in self._e)

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(self[i, j]) for j in range(1, self.n + 1))
            for i in range(1, self.m + 1)
        )
        return "QMatrix(%dx%d: %s)" % (self.m, self.n, body)


def enumerate_index_sets(k, n, fixed=None):
    """Stream the strictly increasing k-element subsets of {1..n} in
    lexicographic order; with ``fixed`` given, only subsets containing it.

    k > n yields nothing (empty stream, not an error); k = 0 yields the empty
    set unless a fixed index is demanded.
    """
    if k < 0 or k > n:
        return
    if fixed is None:
        yield from combinations(range(1, n + 1), k)
        return
    if not 1 <= fixed <= n or k == 0:
        return
    rest = [x for x in range(1, n + 1) if x != fixed]
    for combo in combinations(rest, k - 1):
        yield tuple(sorted(combo + (fixed,)))
