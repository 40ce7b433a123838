"""Regenerate the golden problem fixtures under tests/data/golden/.

The main bundle is a restricted two-sided system AXB = D over the exact
backend whose side profiles differ on purpose: the A side is rank-deficient
with a non-Hermitian weighted Gram (so it exercises the root-conjugated
branch, fed explicit exact roots), while the B side is square full rank (the
determinant branch).  The expected X is pinned to the solver's exact output,
which the test suite re-derives along both nesting orders and through the
weighted-inverse composition and the complex-adjoint oracle.  Note the
right-hand side D is deliberately *outside* the solvable set, so solving
this bundle reports solvable=false and exits with status 2 while still
producing the unique restricted candidate.

Also writes an all-identity bundle (X = D) and a small left-sided bundle
whose right-hand side misses the range of a singular A.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import json

from quatmat import QMatrix, RestrictedEquation, SolveOptions, solve
from quatmat.io import write_matrix, _dump
from quatmat.scalars import parse_quaternion


def mat(rows):
    return QMatrix.from_rows(
        [[parse_quaternion(cell) for cell in row] for row in rows]
    )


GOLDEN = {
    "a": mat([["k", "-j", "j"], ["1", "0", "k"]]),
    "b": mat([["k", "-j", "j"], ["0", "1", "i"]]),
    "d": mat([["i", "-j", "k"], ["-k", "0", "j"]]),
    "m": mat([["5", "4k"], ["-4k", "5"]]),
    "n": mat([["5", "0", "-4j"], ["0", "4", "0"], ["4j", "0", "5"]]),
    "p": mat([["5/2", "-3/2j"], ["3/2j", "5/2"]]),
    "q": mat([["1", "i", "0"], ["-i", "2", "-j"], ["0", "j", "2"]]),
    "m_sqrt": mat([["2", "k"], ["-k", "2"]]),
    "n_inv_sqrt": mat([["2/3", "0", "1/3j"], ["0", "1/2", "0"],
                       ["-1/3j", "0", "2/3"]]),
    "p_sqrt": mat([["3/2", "-1/2j"], ["1/2j", "3/2"]]),
}


def main():
    out = Path(__file__).resolve().parents[1] / "tests" / "data" / "golden"
    out.mkdir(parents=True, exist_ok=True)

    for name, A in GOLDEN.items():
        write_matrix(A, out / ("%s.json" % name))

    eq = RestrictedEquation(
        kind="two_sided",
        A=GOLDEN["a"], B=GOLDEN["b"], D=GOLDEN["d"],
        M=GOLDEN["m"], N=GOLDEN["n"], P=GOLDEN["p"], Q=GOLDEN["q"],
        m_sqrt=GOLDEN["m_sqrt"], n_inv_sqrt=GOLDEN["n_inv_sqrt"],
        p_sqrt=GOLDEN["p_sqrt"],
    )
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = solve(eq, SolveOptions(verification=True))
    write_matrix(report.X, out / "x_true.json")
    print("golden X (exact, route-verified):")
    for i in range(1, report.X.m + 1):
        for j in range(1, report.X.n + 1):
            print("  x_%d%d = %s" % (i, j, report.X[i, j]))

    _dump({
        "kind": "two_sided",
        "matrices": {
            "A": "a.json", "B": "b.json", "D": "d.json",
            "M": "m.json", "N": "n.json", "P": "p.json", "Q": "q.json",
        },
        "expected_x": "x_true.json",
        "options": {
            "backend": "rational",
            "roots": {
                "m_sqrt": "m_sqrt.json",
                "n_inv_sqrt": "n_inv_sqrt.json",
                "p_sqrt": "p_sqrt.json",
            },
        },
    }, out / "problem.json")

    # all-identity bundle: X = D
    eye2 = QMatrix.identity(2)
    d2 = mat([["1 + i", "-j"], ["k", "2"]])
    write_matrix(eye2, out / "eye2.json")
    write_matrix(d2, out / "d2.json")
    _dump({
        "kind": "two_sided",
        "matrices": {"A": "eye2.json", "B": "eye2.json", "D": "d2.json"},
        "expected_x": "d2.json",
        "options": {"backend": "rational"},
    }, out / "identity_problem.json")

    # left-sided bundle with D outside the range of a singular A
    a_sing = mat([["1", "i"], ["j", "-k"]])  # row 2 = j * row 1
    d_col = mat([["0"], ["1"]])
    write_matrix(a_sing, out / "a_sing.json")
    write_matrix(d_col, out / "d_col.json")
    _dump({
        "kind": "left",
        "matrices": {"A": "a_sing.json", "D": "d_col.json"},
        "options": {"backend": "rational"},
    }, out / "unsolvable_problem.json")

    print("fixtures written to %s" % out)


if __name__ == "__main__":
    main()
