"""QMatrix container semantics: 1-based access, product, conjugate transpose."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatmat import QMatrix
from quatmat.errors import (
    BackendMismatch,
    DimensionMismatch,
    NonSquare,
    SizeCapExceeded,
)
from quatmat.matrices import as_quaternion, enumerate_index_sets
from quatmat.scalars import I, J, K, ONE, Quaternion, quat

from helpers import hermitian, hpd, rmat

fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
rquats = st.builds(Quaternion, fracs, fracs, fracs, fracs)


def qmats(m, n):
    return st.lists(
        st.lists(rquats, min_size=n, max_size=n), min_size=m, max_size=m
    ).map(QMatrix.from_rows)


def test_from_rows_and_indexing():
    A = QMatrix.from_rows([["1", "i"], ["j", "k"], ["0", "-1/2"]])
    assert A.shape == (3, 2)
    assert A[1, 2] == I and A[2, 1] == J and A[3, 2] == quat(Fraction(-1, 2))
    assert A.row(2) == (J, K)
    assert A.column(1) == (ONE, J, quat(0))
    assert A.rows()[2] == [quat(0), quat(Fraction(-1, 2))]
    with pytest.raises(IndexError):
        A[0, 1]
    with pytest.raises(IndexError):
        A[1, 3]
    with pytest.raises(DimensionMismatch):
        QMatrix.from_rows([[ONE], [ONE, I]])


def test_constructors():
    assert QMatrix.identity(3)[2, 2] == ONE
    assert QMatrix.zeros(2, 3).max_abs() == 0
    D = QMatrix.diag([1, "i", "1/2"])
    assert D[2, 2] == I and D[1, 2].is_zero()
    assert QMatrix.identity(2, backend="f64").backend == "f64"


def test_matmul_shapes_and_values():
    A = QMatrix.from_rows([["i", "j"]])          # 1x2
    B = QMatrix.from_rows([["j"], ["k"]])        # 2x1
    assert (A @ B)[1, 1] == K + I                # ij + jk
    assert (B @ A).shape == (2, 2)
    with pytest.raises(DimensionMismatch):
        _ = A @ A
    with pytest.raises(BackendMismatch):
        _ = A @ B.to_float()


@given(qmats(2, 3), qmats(3, 2))
def test_conjugate_transpose_antihomomorphism(A, B):
    assert (A @ B).H == B.H @ A.H
    assert A.H.H == A
    assert (A + A).H == A.H + A.H


def test_noncommutative_scaling():
    A = QMatrix.from_rows([["i"]])
    assert A.scale_left(J)[1, 1] == J * I
    assert A.scale_right(J)[1, 1] == I * J
    assert A.scale_left(J) != A.scale_right(J)


def test_hermitian_predicate(rng):
    H = hermitian(rng, 3)
    assert H.is_hermitian()
    bad = H.replace_row(1, [H[1, 1], H[1, 2] + ONE, H[1, 3]])
    assert not bad.is_hermitian()
    with pytest.raises(NonSquare):
        rmat(rng, 2, 3).is_hermitian()
    # float tolerance: tiny asymmetry passes, gross asymmetry fails
    Hf = H.to_float()
    assert Hf.is_hermitian()
    assert not (Hf + rmat(rng, 3, 3).to_float()).is_hermitian()


def test_replace_row_column(rng):
    A = rmat(rng, 3, 3)
    col = [ONE, I, J]
    B = A.replace_column(2, col)
    assert B.column(2) == tuple(col) and B.column(1) == A.column(1)
    C = A.replace_row(3, col)
    assert C.row(3) == tuple(col) and C.row(1) == A.row(1)
    with pytest.raises(DimensionMismatch):
        A.replace_column(1, [ONE])


def test_submatrix_and_deletion(rng):
    A = rmat(rng, 4, 4)
    S = A.submatrix((1, 3), (2, 4))
    assert S.shape == (2, 2) and S[2, 1] == A[3, 2]
    D = A.delete_row_col(2, 3)
    assert D.shape == (3, 3) and D[1, 1] == A[1, 1] and D[3, 3] == A[4, 4]


def test_equality_and_approx(rng):
    A = rmat(rng, 2, 2)
    assert A == QMatrix.from_rows(A.rows())
    assert A != A + QMatrix.identity(2)
    Af = A.to_float()
    nudged = Af + QMatrix.from_rows(
        [[quat(1e-12), quat(0.0)], [quat(0.0), quat(0.0)]])
    assert Af.approx_eq(nudged, 1e-9)
    assert not Af.approx_eq(nudged, 1e-15)


def test_as_quaternion_coercions():
    assert as_quaternion("1/2 + k").components() == (Fraction(1, 2), 0, 0, 1)
    assert as_quaternion([1, 0, 0, "1/3"]).components()[3] == Fraction(1, 3)
    assert as_quaternion(2, backend="f64") == quat(2.0)
    assert as_quaternion(Fraction(1, 4)) == quat(Fraction(1, 4))


def test_enumerate_index_sets():
    sets = list(enumerate_index_sets(2, 4))
    assert len(sets) == 6 and sets[0] == (1, 2) and sets[-1] == (3, 4)
    with2 = list(enumerate_index_sets(2, 4, fixed=2))
    assert with2 == [s for s in sets if 2 in s]


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        from quatmat import rdet
        rdet(1, QMatrix.identity(9))
