"""JSON matrix files, problem bundles, and solve reports."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quatmat import (
    QMatrix,
    Quaternion,
    RestrictedEquation,
    load_problem,
    parse_matrix,
    read_matrix,
    report_to_dict,
    serialize_matrix,
    solve,
    write_matrix,
    write_report,
)

fracs = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))


# -- matrix documents ----------------------------------------------------------------

def test_serialize_shape_and_types():
    A = QMatrix.from_rows([["1/2 + i", "-j"], ["0", "3k"]])
    doc = serialize_matrix(A)
    assert doc["rows"] == 2 and doc["cols"] == 2 and doc["scalar"] == "rational"
    assert doc["data"][0] == ["1/2", "1", "0", "0"]
    assert all(isinstance(c, str) for entry in doc["data"] for c in entry)
    doc = serialize_matrix(A.to_float())
    assert doc["scalar"] == "f64"
    assert all(isinstance(c, float) for entry in doc["data"] for c in entry)


@given(st.data())
def test_roundtrip_rational(data):
    m, n = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
    rows = [
        [Quaternion(*(data.draw(fracs) for _ in range(4))) for _ in range(n)]
        for _ in range(m)
    ]
    A = QMatrix.from_rows(rows)
    assert parse_matrix(json.loads(json.dumps(serialize_matrix(A)))) == A


def test_roundtrip_awkward_floats(tmp_path):
    A = QMatrix.from_rows(
        [[Quaternion(0.1, -1.0 / 3.0, 2e-17, -0.0)], [Quaternion(1e300, 0.0, -5e-324, 7.0)]]
    )
    path = tmp_path / "awkward.json"
    write_matrix(A, path)
    assert read_matrix(path) == A


def test_parse_matrix_validation():
    good = serialize_matrix(QMatrix.identity(2))
    with pytest.raises(ValueError):
        parse_matrix([1, 2, 3])
    for key in ("rows", "cols", "scalar", "data"):
        broken = dict(good)
        del broken[key]
        with pytest.raises(ValueError):
            parse_matrix(broken)
    with pytest.raises(ValueError):
        parse_matrix(dict(good, rows=0))
    with pytest.raises(ValueError):
        parse_matrix(dict(good, scalar="f32"))
    with pytest.raises(ValueError):
        parse_matrix(dict(good, data=good["data"][:3]))
    with pytest.raises(ValueError):
        parse_matrix(dict(good, data=[["1", "0", "0"]] * 4))
    with pytest.raises(ValueError):
        parse_matrix(dict(good, data=[["1", "0", "0", True]] * 4))
    with pytest.raises(ValueError):
        parse_matrix(dict(good, data=[["1/0", "0", "0", "0"]] * 4))
    # floats are not coerced silently into exact rationals
    with pytest.raises(ValueError):
        parse_matrix(dict(good, data=[[0.5, "0", "0", "0"]] * 4))


# -- problem bundles -----------------------------------------------------------------

def test_load_golden_problem(gold):
    bundle = load_problem(gold / "problem.json")
    eq = bundle.eq
    assert eq.kind == "two_sided"
    assert eq.A.shape == (2, 3) and eq.B.shape == (2, 3)
    assert eq.m_sqrt is not None and eq.n_inv_sqrt is not None
    assert eq.p_sqrt is not None
    assert bundle.expected_x == read_matrix(gold / "x_true.json")
    assert bundle.options.verification is False
    assert bundle.path == gold / "problem.json"


def test_load_problem_overrides(gold):
    bundle = load_problem(gold / "problem.json", backend="f64",
                          verification=True, tolerance=1e-6, threads=3)
    assert bundle.eq.D.backend == "f64"
    assert bundle.eq.A.backend == "f64"
    assert bundle.expected_x.backend == "f64"
    assert bundle.options.verification is True
    assert bundle.options.tolerance == 1e-6
    assert bundle.options.threads == 3


def test_load_problem_rejects(tmp_path, gold):
    with pytest.raises(OSError):
        load_problem(tmp_path / "missing.json")

    def dump(doc):
        p = tmp_path / "problem.json"
        p.write_text(json.dumps(doc))
        return p

    with pytest.raises(ValueError):
        load_problem(dump([]))
    with pytest.raises(ValueError):
        load_problem(dump({"kind": "sideways", "matrices": {}}))
    with pytest.raises(ValueError):
        load_problem(dump({"kind": "left", "matrices": {"A": "nope.json"}}))

    # an f64 problem cannot be forced onto the exact backend
    fa = tmp_path / "af.json"
    write_matrix(QMatrix.identity(2).to_float(), fa)
    p = dump({"kind": "left", "matrices": {"A": "af.json", "D": "af.json"}})
    assert load_problem(p).eq.D.backend == "f64"
    with pytest.raises(ValueError):
        load_problem(p, backend="rational")


# -- reports -------------------------------------------------------------------------

def _identity_report(gold):
    bundle = load_problem(gold / "identity_problem.json")
    return solve(bundle.eq, bundle.options), bundle


def test_report_contract(gold):
    rep, bundle = _identity_report(gold)
    doc = report_to_dict(rep, bundle.options)
    assert doc["format"] == "quatmat-report/1"
    assert set(doc) == {
        "format", "kind", "solvable", "X", "method", "hermitian_profile",
        "ranks", "residuals", "diagnostics", "tolerances", "wall_time_s",
    }
    assert doc["solvable"] is True
    assert set(doc["residuals"]) == {
        "primary", "restriction", "route_deviation", "candidate_projection",
    }
    assert doc["residuals"]["primary"] == 0.0
    assert doc["tolerances"]["solvability"] == "exact"
    assert parse_matrix(doc["X"]) == rep.X
    json.dumps(doc)  # the whole document is JSON-serializable


def test_report_determinism(gold):
    rep1, bundle = _identity_report(gold)
    rep2, _ = _identity_report(gold)
    d1 = report_to_dict(rep1, bundle.options)
    d2 = report_to_dict(rep2, bundle.options)
    d1.pop("wall_time_s"), d2.pop("wall_time_s")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_write_report_extra(tmp_path, gold):
    rep, bundle = _identity_report(gold)
    out = tmp_path / "report.json"
    doc = write_report(rep, out, bundle.options, extra={"warnings": ["w"]})
    on_disk = json.loads(out.read_text())
    assert on_disk == json.loads(json.dumps(doc))
    assert on_disk["warnings"] == ["w"]
