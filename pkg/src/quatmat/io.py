"""JSON file formats: matrices, problem bundles, and solve reports.

Matrix files carry ``rows``, ``cols``, ``scalar`` ("rational" or "f64"),
and ``data``: a row-major list of [a0, a1, a2, a3] component arrays, one
per entry.  Rational components are written as exact "p/q" strings in
lowest terms (bare integers are accepted on input); f64 components are
JSON numbers, whose shortest-repr serialization round-trips bit-exactly.
parse_matrix(serialize_matrix(A)) == A holds exactly on both backends.

Problem files name one restricted equation: ``kind`` (two_sided | left |
right), a ``matrices`` table of file references (A, B, D and optional
weights M, N, P, Q; paths resolve relative to the problem file), an
optional ``expected_x`` reference for verification against a known
solution, and an ``options`` table (backend, verification, tolerance,
threads, and a ``roots`` table of explicit square-root matrix references
for the exact-backend deficient branches: m_sqrt, n_inv_sqrt, p_sqrt).

Reports serialize a SolveReport with the solution embedded as a matrix
document.  Serialization sorts keys and is deterministic apart from the
wall_time_s field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .equations import RestrictedEquation, SolveOptions
from .matrices import QMatrix
from .scalars import F64, RATIONAL, Quaternion

_SCALARS = (RATIONAL, F64)


def _parse_component(value, backend, where):
    if isinstance(value, bool):
        raise ValueError("%s: boolean is not a quaternion component" % where)
    if backend == RATIONAL:
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError("%s: bad rational %r (%s)" % (where, value, exc))
        raise ValueError(
            "%s: rational components are integers or 'p/q' strings, got %r"
            % (where, value)
        )
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("%s: bad number %r (%s)" % (where, value, exc))
    raise ValueError("%s: expected a number, got %r" % (where, value))


def parse_matrix(obj):
    """Matrix document (parsed JSON) -> QMatrix."""
    if not isinstance(obj, dict):
        raise ValueError("matrix document must be an object, got %s" % type(obj).__name__)
    for key in ("rows", "cols", "scalar", "data"):
        if key not in obj:
            raise ValueError("matrix document lacks %r" % key)
    rows, cols, scalar, data = obj["rows"], obj["cols"], obj["scalar"], obj["data"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise ValueError("rows/cols must be positive integers")
    if scalar not in _SCALARS:
        raise ValueError("scalar must be one of %s, got %r" % (_SCALARS, scalar))
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ValueError(
            "data must hold rows*cols = %d entries, got %d"
            % (rows * cols, len(data) if isinstance(data, list) else -1)
        )
    out = []
    for r in range(rows):
        row = []
        for c in range(cols):
            entry = data[r * cols + c]
            where = "entry (%d,%d)" % (r + 1, c + 1)
            if not isinstance(entry, list) or len(entry) != 4:
                raise ValueError("%s: expected a 4-component array" % where)
            row.append(
                Quaternion(*(_parse_component(v, scalar, where) for v in entry))
            )
        out.append(row)
    return QMatrix.from_rows(out, backend=scalar)


def serialize_matrix(A):
    """QMatrix -> matrix document (JSON-compatible dict)."""
    data = []
    for i in range(1, A.m + 1):
        for j in range(1, A.n + 1):
            comps = A[i, j].components()
            if A.backend == RATIONAL:
                data.append([str(c) for c in comps])
            else:
                data.append([float(c) for c in comps])
    return {"rows": A.m, "cols": A.n, "scalar": A.backend, "data": data}


def read_matrix(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(json.load(fh))


def write_matrix(A, path):
    _dump(serialize_matrix(A), path)


def _dump(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


# -- problem bundles ----------------------------------------------------------------

@dataclass
class ProblemBundle:
    """A loaded problem: the equation, the solve options, and extras."""

    eq: RestrictedEquation
    options: SolveOptions
    expected_x: "QMatrix | None"
    path: Path


_REQUIRED = {"two_sided": ("A", "B", "D"), "left": ("A", "D"), "right": ("B", "D")}
_WEIGHTS = {"two_sided": ("M", "N", "P", "Q"), "left": ("M", "N"), "right": ("P", "Q")}
_ROOTS = {
    "two_sided": ("m_sqrt", "n_inv_sqrt", "p_sqrt"),
    "left": ("m_sqrt", "n_inv_sqrt"),
    "right": ("p_sqrt",),
}


def load_problem(path, backend=None, verification=None, tolerance=None,
                 threads=None):
    """Load a problem file into a ProblemBundle.

    The keyword arguments override the file's own options table (command
    line flags take precedence).  backend "f64" converts exact matrices to
    float; requesting "rational" for float files is an error because no
    exact content exists to recover.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("problem document must be an object")
    kind = doc.get("kind")
    if kind not in _REQUIRED:
        raise ValueError(
            "kind must be one of %s, got %r" % (tuple(_REQUIRED), kind)
        )
    refs = doc.get("matrices")
    if not isinstance(refs, dict):
        raise ValueError("problem document lacks a 'matrices' table")
    opts = doc.get("options", {})
    if not isinstance(opts, dict):
        raise ValueError("'options' must be a table")

    backend = backend if backend is not None else opts.get("backend")
    if backend is not None and backend not in _SCALARS:
        raise ValueError("backend must be one of %s, got %r" % (_SCALARS, backend))

    def load_ref(name, table=refs):
        ref = table.get(name)
        if ref is None:
            return None
        T = read_matrix(path.parent / ref)
        if backend == F64:
            T = T.to_float()
        elif backend == RATIONAL and T.backend != RATIONAL:
            raise ValueError(
                "%s is stored as f64; the exact backend cannot recover it" % name
            )
        return T

    for name in _REQUIRED[kind]:
        if refs.get(name) is None:
            raise ValueError("kind %r requires a %s matrix" % (kind, name))
    fields = {}
    for name in _REQUIRED[kind] + _WEIGHTS[kind]:
        fields[name] = load_ref(name)
    roots = opts.get("roots", {})
    if not isinstance(roots, dict):
        raise ValueError("'options.roots' must be a table")
    for name in _ROOTS[kind]:
        fields[name] = load_ref(name, table=roots)

    eq = RestrictedEquation(kind=kind, **fields)
    options = SolveOptions(
        verification=bool(
            verification if verification is not None
            else opts.get("verification", False)
        ),
        tolerance=tolerance if tolerance is not None else opts.get("tolerance"),
        threads=int(threads if threads is not None else opts.get("threads", 1)),
    )
    expected = None
    if doc.get("expected_x") is not None:
        expected = read_matrix(path.parent / doc["expected_x"])
        if backend == F64:
            expected = expected.to_float()
    return ProblemBundle(eq=eq, options=options, expected_x=expected, path=path)


# -- reports ------------------------------------------------------------------------

def _json_scalar(v):
    if v is None or isinstance(v, (int, float, str, bool)):
        return v
    if isinstance(v, Fraction):
        return str(v)
    return str(v)


def report_to_dict(report, options=None):
    """SolveReport -> report document (JSON-compatible dict)."""
    backend = report.X.backend
    if backend == RATIONAL:
        tol_solv = "exact"
        tol_routes = "exact"
    else:
        override = options.tolerance if options is not None else None
        tol_solv = override if override is not None else 1e-8
        tol_routes = override if override is not None else 1e-9
    return {
        "format": "quatmat-report/1",
        "kind": report.kind,
        "solvable": report.solvable,
        "X": serialize_matrix(report.X),
        "method": {k: _json_scalar(v) if not isinstance(v, list) else v
                   for k, v in report.method.items()},
        "hermitian_profile": list(report.hermitian_profile),
        "ranks": list(report.ranks),
        "residuals": {
            "primary": report.residual_primary,
            "restriction": report.restriction_residual,
            "route_deviation": report.route_deviation,
            "candidate_projection":
                report.diagnostics.get("candidate_projection_residual"),
        },
        "diagnostics": {k: _json_scalar(v) for k, v in report.diagnostics.items()},
        "tolerances": {
            "solvability": tol_solv,
            "routes": tol_routes,
            "note": "float tolerances scale with max(1, |D|_max); "
                    "'exact' means bit-exact rational comparison",
        },
        "wall_time_s": report.wall_time,
    }


def write_report(report, path, options=None, extra=None):
    doc = report_to_dict(report, options)
    if extra:
        doc.update(extra)
    _dump(doc, path)
    return doc
