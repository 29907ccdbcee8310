"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored by its coordinates in the power basis
1, z, ..., z^(phi(n)-1), reduced modulo the n-th cyclotomic polynomial, so
equality is plain coordinate comparison.  Order 1 (and 2) is just Q.

Literal syntax (used in algebra files and reports)::

    expr := term (("+"|"-") term)*
    term := rat | rat "*" pow | pow
    pow  := "z" ["^" uint]
    rat  := ["-"] uint ["/" uint]

where ``z`` is the primitive root zeta_n of the declared order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import FieldMismatchError, ScalarParseError

__all__ = [
    "ScalarField",
    "Cyc",
    "field",
    "cyclotomic_polynomial",
    "parse_scalar",
    "format_scalar",
    "conjugate",
    "as_scalar",
]


def _poly_divexact(num, den):
    # exact division of integer polynomials (low degree first), den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = num[shift + len(den) - 1]
        out[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    if any(num):
        raise ArithmeticError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial.

    Obtained by dividing x^n - 1 by every Phi_d with d a proper divisor of n.
    """
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class ScalarField:
    """The cyclotomic field Q(zeta_n); use :func:`field` to get the shared instance."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("field order must be a positive integer")
        self.order = order
        self.cyclo = cyclotomic_polynomial(order)
        self.phi = len(self.cyclo) - 1
        phi = self.phi
        # powers[e] = coordinates of z^e, e < n
        powers = []
        vec = [0] * phi
        vec[0] = 1
        for _ in range(max(order, 2 * phi - 1)):
            powers.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(phi):
                    vec[i] -= top * self.cyclo[i]
        self._powers = powers
        # mul_table[p, q] = coordinates of z^p * z^q
        table = np.zeros((phi, phi, phi), dtype=object)
        for p in range(phi):
            for q in range(phi):
                table[p, q, :] = powers[p + q]
        self.mul_table = table
        # conj_matrix[:, k] = coordinates of z^(-k)
        conj = np.zeros((phi, phi), dtype=object)
        for k in range(phi):
            conj[:, k] = self.power_coords(-k)
        self.conj_matrix = conj

    def __repr__(self):
        return f"ScalarField({self.order})"

    def __reduce__(self):
        return (field, (self.order,))

    def power_coords(self, k: int) -> tuple[int, ...]:
        return self._powers[k % self.order]

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    # convenient constructors
    def zero(self) -> "Cyc":
        return Cyc(self, (Fraction(0),) * self.phi)

    def one(self) -> "Cyc":
        return self.rational(1)

    def rational(self, value) -> "Cyc":
        return Cyc(self, (Fraction(value),) + (Fraction(0),) * (self.phi - 1))

    def zeta(self, k: int = 1) -> "Cyc":
        return Cyc(self, tuple(Fraction(c) for c in self.power_coords(k)))

    def parse(self, text: str) -> "Cyc":
        return parse_scalar(text, self)


@lru_cache(maxsize=None)
def field(order: int) -> ScalarField:
    return ScalarField(order)


def _mul_coords(fld: ScalarField, a, b):
    phi = fld.phi
    if phi == 1:
        return (a[0] * b[0],)
    raw = [Fraction(0)] * (2 * phi - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    raw[i + j] += x * y
    out = list(raw[:phi])
    for e in range(phi, 2 * phi - 1):
        c = raw[e]
        if c:
            for i, p in enumerate(fld.power_coords(e)):
                if p:
                    out[i] += c * p
    return tuple(out)


def _solve_small(matrix, rhs):
    # Gauss-Jordan over Fractions for the phi x phi inverse computation
    n = len(rhs)
    rows = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


class Cyc:
    """Immutable element of Q(zeta_n)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: ScalarField, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != fld.phi:
            raise ValueError(f"expected {fld.phi} coordinates, got {len(coeffs)}")
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Cyc is immutable")

    def __reduce__(self):
        return (Cyc, (self.field, self.coeffs))

    # coercion
    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.field is not self.field:
                if other.field.order != self.field.order:
                    raise FieldMismatchError(
                        f"cannot mix Q(zeta_{self.field.order}) and Q(zeta_{other.field.order})"
                    )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyc(self.field, (x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.field, (-x for x in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyc(self.field, (x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyc(self.field, _mul_coords(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def mult_matrix(self):
        """Matrix (list of rows) of multiplication by ``self`` on power-basis coordinates."""
        phi = self.field.phi
        cols = []
        for j in range(phi):
            unit = [0] * phi
            unit[j] = 1
            cols.append(_mul_coords(self.field, self.coeffs, unit))
        return [[cols[j][i] for j in range(phi)] for i in range(phi)]

    def inverse(self) -> "Cyc":
        if not self:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.field.phi == 1:
            return Cyc(self.field, (1 / self.coeffs[0],))
        unit = [Fraction(1)] + [Fraction(0)] * (self.field.phi - 1)
        return Cyc(self.field, _solve_small(self.mult_matrix(), unit))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other) if isinstance(other, (Cyc, int, Fraction)) else NotImplemented
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def conjugate(self) -> "Cyc":
        return conjugate(self)

    def __repr__(self):
        return f"Cyc({format_scalar(self)!r}, order={self.field.order})"

    def __str__(self):
        return format_scalar(self)


def as_scalar(value, fld: ScalarField) -> Cyc:
    """Coerce an int, Fraction, literal string or :class:`Cyc` into ``fld``."""
    if isinstance(value, Cyc):
        if value.field.order != fld.order:
            raise FieldMismatchError(
                f"scalar from Q(zeta_{value.field.order}) used in Q(zeta_{fld.order})"
            )
        return value
    if isinstance(value, str):
        return parse_scalar(value, fld)
    if isinstance(value, (int, Fraction, np.integer)):
        return fld.rational(int(value) if isinstance(value, np.integer) else value)
    raise TypeError(f"cannot interpret {value!r} as a scalar")


def conjugate(a: Cyc) -> Cyc:
    """Complex conjugation: the automorphism z -> z^(n-1)."""
    fld = a.field
    m = fld.conj_matrix
    phi = fld.phi
    return Cyc(fld, (sum(m[i, k] * a.coeffs[k] for k in range(phi)) for i in range(phi)))


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


class _Parser:
    def __init__(self, text, fld):
        self.text = text
        self.fld = fld
        self.pos = 0
        self.tokens = []
        for m in _TOKEN.finditer(text):
            if m.group(1) is not None:
                self.tokens.append(("int", int(m.group(1)), m.start(1)))
            elif m.group(2) is not None:
                if m.group(2).isspace():
                    continue
                self.tokens.append((m.group(2), m.group(2), m.start(2)))
        self.i = 0

    def error(self, message, at=None):
        if at is None:
            at = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise ScalarParseError(message, self.text, at)

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, kind):
        if self.peek() != kind:
            self.error(f"expected {kind!r}")
        tok = self.tokens[self.i]
        self.i += 1
        return tok[1]

    def parse(self):
        if not self.tokens:
            self.error("empty scalar literal")
        total = self.term()
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())
            t = self.term()
            total = total + t if op == "+" else total - t
        if self.i != len(self.tokens):
            self.error("unexpected token")
        return total

    def term(self):
        if self.peek() == "z":
            return self.pow()
        r = self.rat()
        if self.peek() == "*":
            self.take("*")
            return r * self.pow()
        return self.fld.rational(r)

    def rat(self):
        sign = 1
        if self.peek() == "-":
            self.take("-")
            sign = -1
        num = self.take("int")
        if self.peek() == "/":
            self.take("/")
            at = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
            den = self.take("int")
            if den == 0:
                self.error("zero denominator", at)
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def pow(self):
        self.take("z")
        k = 1
        if self.peek() == "^":
            self.take("^")
            k = self.take("int")
        return self.fld.zeta(k)


def parse_scalar(text: str, fld: ScalarField | int) -> Cyc:
    """Parse a scalar literal into its canonical element of ``fld``.

    Exponents are reduced modulo the field order, so ``z^12`` in order 12 is 1.
    """
    if isinstance(fld, int):
        fld = field(fld)
    return _Parser(text, fld).parse()


def _format_rat(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def format_scalar(a: Cyc) -> str:
    """Canonical literal: power-basis terms in increasing degree."""
    parts = []
    for k, c in enumerate(a.coeffs):
        if c == 0:
            continue
        pw = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if not parts:
            if not pw:
                parts.append(_format_rat(c))
            elif c == 1:
                parts.append(pw)
            else:
                parts.append(f"{_format_rat(c)}*{pw}")
        else:
            sign = " + " if c > 0 else " - "
            mag = abs(c)
            if not pw:
                parts.append(sign + _format_rat(mag))
            elif mag == 1:
                parts.append(sign + pw)
            else:
                parts.append(f"{sign}{_format_rat(mag)}*{pw}")
    return "".join(parts) if parts else "0"


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
