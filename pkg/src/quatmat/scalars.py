"""Quaternion scalars over two interchangeable real backends.

A quaternion is a0 + a1*i + a2*j + a3*k.  All four components live in one
scalar backend: either ``fractions.Fraction`` (exact, unbounded) or ``float``.
The multiplication table is the right-handed Hamilton one,

    i*i = j*j = k*k = -1,   i*j = k,   j*k = i,   k*i = j,

with the anticommutators j*i = -k etc. following.  Values are immutable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isnan, sqrt

from .errors import BackendMismatch, NumericalInconsistency

RATIONAL = "rational"
F64 = "f64"

_TERM = re.compile(
    r"""\s*(?P<sign>[+-]?)\s*
        (?P<coef>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?)?
        \s*(?P<unit>[1ijk]?)\s*""",
    re.VERBOSE,
)


def real_scalar(value, backend=RATIONAL):
    """Coerce ``value`` (int, Fraction, float, or a "p/q" string) to a backend scalar."""
    if backend == RATIONAL:
        if isinstance(value, float):
            raise BackendMismatch("refusing to coerce float %r into the rational backend" % value)
        return Fraction(value)
    if backend != F64:
        raise ValueError("unknown backend %r" % backend)
    out = float(Fraction(value)) if isinstance(value, str) else float(value)
    if isnan(out):
        raise NumericalInconsistency("NaN is not a value")
    return out


class Quaternion:
    """An immutable quaternion with homogeneous components.

    Integer components are promoted to ``Fraction``; floats stay floats.  The
    two backends never mix inside one value or one operation.
    """

    __slots__ = ("a0", "a1", "a2", "a3")

    def __init__(self, a0=0, a1=0, a2=0, a3=0):
        comps = [a0, a1, a2, a3]
        has_float = any(isinstance(c, float) for c in comps)
        if has_float:
            comps = [float(c) for c in comps]
            if any(isnan(c) for c in comps):
                raise NumericalInconsistency("NaN component in quaternion")
        else:
            comps = [c if isinstance(c, Fraction) else Fraction(c) for c in comps]
        object.__setattr__(self, "a0", comps[0])
        object.__setattr__(self, "a1", comps[1])
        object.__setattr__(self, "a2", comps[2])
        object.__setattr__(self, "a3", comps[3])

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion values are immutable")

    # -- backend handling -------------------------------------------------
    @property
    def backend(self):
        return F64 if isinstance(self.a0, float) else RATIONAL

    def _join(self, other):
        if isinstance(self.a0, float) != isinstance(other.a0, float):
            raise BackendMismatch(
                "cannot combine %s and %s backends" % (self.backend, other.backend)
            )
        return other

    def to_float(self):
        """A copy of this value in the float backend."""
        return Quaternion(float(self.a0), float(self.a1), float(self.a2), float(self.a3))

    # -- ring structure ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        self._join(other)
        return Quaternion(self.a0 + other.a0, self.a1 + other.a1,
                          self.a2 + other.a2, self.a3 + other.a3)

    def __sub__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        self._join(other)
        return Quaternion(self.a0 - other.a0, self.a1 - other.a1,
                          self.a2 - other.a2, self.a3 - other.a3)

    def __neg__(self):
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        self._join(other)
        p0, p1, p2, p3 = self.a0, self.a1, self.a2, self.a3
        q0, q1, q2, q3 = other.a0, other.a1, other.a2, other.a3
        return Quaternion(
            p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
            p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
            p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
            p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
        )

    def scale(self, c):
        """Multiply every component by a real scalar (real scalars are central)."""
        return Quaternion(self.a0 * c, self.a1 * c, self.a2 * c, self.a3 * c)

    def __truediv__(self, c):
        # division by a central (real) scalar only; quaternion division is
        # ambiguous, use inv() and pick a side explicitly.
        if isinstance(c, Quaternion):
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("division of quaternion by zero scalar")
        if isinstance(self.a0, Fraction):
            c = Fraction(c)
        return Quaternion(self.a0 / c, self.a1 / c, self.a2 / c, self.a3 / c)

    # -- involution and norm ------------------------------------------------
    def conj(self):
        return Quaternion(self.a0, -self.a1, -self.a2, -self.a3)

    def norm2(self):
        """q * conj(q) as a real scalar: a0^2 + a1^2 + a2^2 + a3^2."""
        return self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3

    def abs(self):
        return sqrt(float(self.norm2()))

    def inv(self):
        n2 = self.norm2()
        if n2 == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return Quaternion(self.a0 / n2, -self.a1 / n2, -self.a2 / n2, -self.a3 / n2)

    # -- predicates ----------------------------------------------------------
    @property
    def real(self):
        return self.a0

    def is_zero(self):
        return self.a0 == 0 and self.a1 == 0 and self.a2 == 0 and self.a3 == 0

    def is_real(self, tol=0):
        if tol == 0:
            return self.a1 == 0 and self.a2 == 0 and self.a3 == 0
        return abs(self.a1) <= tol and abs(self.a2) <= tol and abs(self.a3) <= tol

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return (self.a0 == other.a0 and self.a1 == other.a1
                and self.a2 == other.a2 and self.a3 == other.a3)

    def __hash__(self):
        return hash((self.a0, self.a1, self.a2, self.a3))

    def approx_eq(self, other, tol):
        d = self - other
        return d.abs() <= tol

    def components(self):
        return (self.a0, self.a1, self.a2, self.a3)

    def __repr__(self):
        return "Quaternion(%r)" % format_quaternion(self)

    def __str__(self):
        return format_quaternion(self)


def quat(a0=0, a1=0, a2=0, a3=0):
    """Shorthand constructor used heavily in tests and fixtures."""
    return Quaternion(a0, a1, a2, a3)


ZERO = Quaternion(0)
ONE = Quaternion(1)
I = Quaternion(0, 1)
J = Quaternion(0, 0, 1)
K = Quaternion(0, 0, 0, 1)


def format_quaternion(q):
    """Render as "a0 + a1i + a2j + a3k", omitting zero terms ("0" if all zero).

    Rational components print as p/q, floats with repr precision.
    """
    parts = []
    for comp, unit in zip(q.components(), ("", "i", "j", "k")):
        if comp == 0:
            continue
        mag = -comp if comp < 0 else comp
        body = str(mag) if not isinstance(mag, float) else repr(mag)
        if unit and body == "1":
            body = ""
        text = body + unit
        if not parts:
            parts.append(text if comp > 0 else "-" + text)
        else:
            parts.append(("+ " if comp > 0 else "- ") + text)
    if not parts:
        return "0"
    return " ".join(parts)


def parse_quaternion(text, backend=RATIONAL):
    """Parse the format emitted by :func:`format_quaternion`.

    Accepts any subset/order of terms, e.g. "-1013/864 + 1/144i", "k", "2.5 - j".
    """
    seen = {}
    pos = 0
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty quaternion literal")
    while pos < len(stripped):
        m = _TERM.match(stripped, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse quaternion %r at offset %d" % (text, pos))
        sign, coef, unit = m.group("sign"), m.group("coef"), m.group("unit")
        if coef is None and not unit:
            raise ValueError("cannot parse quaternion %r at offset %d" % (text, pos))
        if unit == "1":
            unit = ""
        value = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            value = -value
        slot = {"": 0, "i": 1, "j": 2, "k": 3}[unit]
        seen[slot] = seen.get(slot, Fraction(0)) + value
        pos = m.end()
    comps = [seen.get(s, Fraction(0)) for s in range(4)]
    if backend == F64:
        comps = [float(c) for c in comps]
    return Quaternion(*comps)
