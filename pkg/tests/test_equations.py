"""Cramer-rule solvers for AXB = D, AX = D, XB = D under range restrictions.

The two-sided grid walks every pairing of per-side formula families; each
solve runs in verification mode, so the alternative nesting order and the
weighted-inverse composition are compared internally as well as here.
"""

import itertools
import random

import pytest

from quatmat import (
    QMatrix,
    RestrictedEquation,
    SolveOptions,
    hermitian_profile,
    mp_inverse,
    rank_case,
    solve,
    solve_ax,
    solve_axb,
    solve_xb,
    wmp_inverse,
)
from quatmat.adjoint import wpinv_oracle
from quatmat.errors import BackendMismatch, SolvabilityWarning

from helpers import a_side, b_side, rmat, to_float_fields

FAMILIES = ("zero", "hermitian", "plain-full", "root-deficient")

# family -> (branch label, hermitian_profile entry, rank_case entry)
EXPECT = {
    "zero": ("zero", "hermitian", "zero"),
    "hermitian": ("hermitian", "hermitian", "deficient"),
    "plain-full": ("plain-full", "non-hermitian", "full"),
    "root-deficient": ("root-deficient", "non-hermitian", "deficient"),
}


def _solvable_eq(rng, fa, fb):
    fields_a, fields_b = a_side(rng, fa), b_side(rng, fb)
    A, B = fields_a["A"], fields_b["B"]
    D = A @ rmat(rng, A.n, B.m) @ B
    return RestrictedEquation(kind="two_sided", D=D, **fields_a, **fields_b)


def test_two_sided_family_grid(rng):
    for fa, fb in itertools.product(FAMILIES, FAMILIES):
        eq = _solvable_eq(rng, fa, fb)
        rep = solve(eq, SolveOptions(verification=True))

        assert rep.method["a_side"] == EXPECT[fa][0]
        assert rep.method["b_side"] == EXPECT[fb][0]
        assert hermitian_profile(eq) == (EXPECT[fa][1], EXPECT[fb][1])
        assert rank_case(eq) == (EXPECT[fa][2], EXPECT[fb][2])

        # right-hand side was built solvable: everything lands exactly
        assert rep.solvable
        assert rep.residual_primary == 0.0
        assert rep.restriction_residual == 0.0
        assert rep.diagnostics["candidate_projection_residual"] == 0.0
        if rep.method["route"] != "zero":
            assert rep.route_deviation == 0.0
            assert rep.method["routes_checked"] == [
                rep.method["route"],
                "inner-a" if rep.method["route"] == "inner-b" else "inner-b",
                "composition",
            ]

        # independent composition through the weighted inverses
        a_dag = wmp_inverse(eq.A, eq.M, eq.N)
        b_dag = wmp_inverse(eq.B, eq.P, eq.Q)
        assert rep.X == a_dag @ eq.D @ b_dag


def test_route_choice_follows_inner_size(rng):
    wide = a_side(rng, "plain-full", m=3, n=3)
    slim = b_side(rng, "plain-full", p=2, q=3)
    D = wide["A"] @ rmat(rng, 3, 2) @ slim["B"]
    rep = solve(RestrictedEquation(kind="two_sided", D=D, **wide, **slim))
    assert rep.method["route"] == "inner-a"  # n=3 > p=2

    even_a = a_side(rng, "plain-full")  # n = 2
    even_b = b_side(rng, "plain-full")  # p = 2
    D = even_a["A"] @ rmat(rng, 2, 2) @ even_b["B"]
    rep = solve(RestrictedEquation(kind="two_sided", D=D, **even_a, **even_b))
    assert rep.method["route"] == "inner-b"


def test_unsolvable_rhs_yields_restricted_candidate(rng):
    fields_a = a_side(rng, "hermitian")  # rank 1 < m = 3
    A = fields_a["A"]
    while True:
        D = rmat(rng, 3, 3)
        a_dag = wmp_inverse(A, fields_a["M"], fields_a["N"])
        if A @ (a_dag @ D) != D:
            break
    eq = RestrictedEquation(kind="two_sided", D=D, B=QMatrix.identity(3),
                            **fields_a)
    with pytest.warns(SolvabilityWarning):
        rep = solve(eq, SolveOptions(verification=True))
    assert not rep.solvable
    assert rep.restriction_residual > 0.0
    assert rep.residual_primary > 0.0
    # X is still the unique restricted candidate, and verification still
    # found every route agreeing on it
    assert rep.X == a_dag @ D
    assert rep.route_deviation == 0.0
    assert rep.diagnostics["candidate_projection_residual"] == 0.0


def test_one_sided_reductions(rng):
    for family in FAMILIES:
        fields_a = a_side(rng, family)
        A = fields_a["A"]
        D = A @ rmat(rng, A.n, 2)
        rep = solve_ax(A, D=D, M=fields_a["M"], N=fields_a["N"],
                       options=SolveOptions(verification=True))
        if family != "zero":
            assert rep.route_deviation == 0.0
        padded = solve_axb(A=A, B=QMatrix.identity(2), D=D,
                           M=fields_a["M"], N=fields_a["N"])
        assert rep.X == padded.X
        assert rep.kind == "left"

        fields_b = b_side(rng, family)
        B = fields_b["B"]
        D = rmat(rng, 3, B.m) @ B
        rep = solve_xb(B, D=D, P=fields_b["P"], Q=fields_b["Q"],
                       options=SolveOptions(verification=True))
        padded = solve_axb(A=QMatrix.identity(3), B=B, D=D,
                           P=fields_b["P"], Q=fields_b["Q"])
        assert rep.X == padded.X
        assert rep.kind == "right"


def test_identity_weights_reduce_to_mp_composition(rng):
    fields_a, fields_b = a_side(rng, "plain-full"), b_side(rng, "hermitian")
    A, B = fields_a["A"], fields_b["B"]
    D = A @ rmat(rng, A.n, B.m) @ B
    rep = solve_axb(A=A, B=B, D=D)  # no weights at all
    assert rep.X == mp_inverse(A) @ D @ mp_inverse(B)
    D1 = A @ rmat(rng, A.n, 2)
    assert solve_ax(A, D=D1).X == mp_inverse(A) @ D1


def test_threads_do_not_change_results(rng):
    eq = _solvable_eq(rng, "root-deficient", "hermitian")
    serial = solve(eq, SolveOptions(verification=True, threads=1))
    pooled = solve(eq, SolveOptions(verification=True, threads=4))
    assert serial.X == pooled.X
    assert serial.method == pooled.method
    assert serial.route_deviation == pooled.route_deviation == 0.0


def test_float_backend_grid(rng):
    for fa, fb in zip(FAMILIES, reversed(FAMILIES)):
        eq = _solvable_eq(rng, fa, fb)
        eqf = RestrictedEquation(
            kind="two_sided",
            **{k: getattr(eq, k).to_float() if getattr(eq, k) is not None
               else None
               for k in ("A", "B", "D", "M", "N", "P", "Q")},
        )
        rep = solve(eqf, SolveOptions(verification=True))
        scale = max(1.0, eqf.D.max_abs())
        assert rep.solvable
        assert rep.residual_primary <= 1e-8 * scale
        if rep.method["route"] != "zero":
            assert rep.route_deviation <= 1e-9 * max(1.0, rep.X.max_abs())
        comp = (wpinv_oracle(eqf.A, eqf.M, eqf.N) @ eqf.D
                @ wpinv_oracle(eqf.B, eqf.P, eqf.Q))
        dev = (rep.X - comp).max_abs()
        assert dev <= 1e-8 * max(1.0, rep.X.max_abs())


def test_equation_validation():
    D = QMatrix.identity(2)
    with pytest.raises(ValueError):
        RestrictedEquation(kind="both_sides", A=D, B=D, D=D)
    with pytest.raises(ValueError):
        RestrictedEquation(kind="two_sided", A=D, B=D)  # no D
    with pytest.raises(ValueError):
        RestrictedEquation(kind="left", D=D)  # no A
    with pytest.raises(ValueError):
        RestrictedEquation(kind="right", D=D)  # no B
    with pytest.raises(BackendMismatch):
        RestrictedEquation(kind="left", A=D.to_float(), D=D)


def test_prepared_equation_first_argument(rng):
    eq = _solvable_eq(rng, "hermitian", "plain-full")
    assert solve_axb(eq).X == solve(eq).X
    with pytest.raises(ValueError):
        solve_ax(eq)  # kind mismatch


def test_report_bookkeeping(rng):
    eq = _solvable_eq(rng, "plain-full", "root-deficient")
    rep = solve(eq)
    assert rep.kind == "two_sided"
    assert rep.ranks == (eq.a_context().r, eq.b_context().r)
    assert rep.wall_time >= 0.0
    assert rep.diagnostics["backend"] == "rational"
    assert rep.diagnostics["a_denominator"] != 0
    assert rep.diagnostics["b_denominator"] != 0
    assert rep.diagnostics["a_branch"] == "plain-full"
    assert rep.diagnostics["b_branch"] == "root-deficient"
