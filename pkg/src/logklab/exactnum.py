"""Exact rational arithmetic, univariate polynomials, interpolation, power sums.

Every quantity in the package is a fractions.Fraction; floating point is
banned from the computation path (decimals are derived for display only).
"""

from __future__ import annotations

import re
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import DuplicateAbscissaError, InputError

# Canonical exact scalar: stdlib Fraction already maintains gcd-reduced
# numerator/denominator with denominator > 0, which is the invariant we need.
Rational = Fraction

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/([1-9]\d*))?$")


def parse_rational(text: str) -> Fraction:
    """Parse the wire format "p/q" or a bare integer string, exactly."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise InputError(f"not a rational: {text!r} (expected 'p/q' or an integer string)")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return Fraction(num, den)


def format_rational(value: Fraction | int) -> str:
    """Render as "p/q", or a bare integer string when the denominator is 1."""
    return str(Fraction(value))


def decimal_string(value: Fraction | int, digits: int = 12) -> str:
    """Correctly rounded decimal with the given number of significant digits.

    For plotting/report columns only; never re-ingested.
    """
    q = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return str(d)


class Polynomial:
    """Immutable exact polynomial; coefficients[i] multiplies x**i.

    Trailing zero coefficients are stripped, so equal polynomials have equal
    coefficient tuples; the zero polynomial has an empty tuple.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[Fraction | int] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self) -> int:
        """Highest nonzero index; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def coefficient(self, i: int) -> Fraction:
        """Coefficient of x**i (zero beyond the degree)."""
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def __call__(self, x: Fraction | int) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coefficients])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coefficients])
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients))
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self.coefficients:
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return "Polynomial(" + " + ".join(terms) + ")"


def poly_eval(p: Polynomial, x: Fraction | int) -> Fraction:
    """Exact value of p at x."""
    return p(x)


def poly_interpolate(points: Sequence[tuple[Fraction | int, Fraction | int]]) -> Polynomial:
    """Unique polynomial of degree < len(points) through all points, exactly.

    Newton divided differences; abscissae must be pairwise distinct.
    """
    if not points:
        raise InputError("interpolation needs at least one point")
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    seen: dict[Fraction, int] = {}
    for idx, x in enumerate(xs):
        if x in seen:
            raise DuplicateAbscissaError(f"duplicate abscissa {x} at positions {seen[x]} and {idx}")
        seen[x] = idx

    # Divided-difference table, kept as the top row only.
    table = list(ys)
    newton = [table[0]]
    for level in range(1, len(points)):
        for i in range(len(points) - level):
            table[i] = (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
        newton.append(table[0])

    result = Polynomial()
    basis = Polynomial([1])
    for i, coeff in enumerate(newton):
        result = result + basis * coeff
        basis = basis * Polynomial([-xs[i], 1])
    return result


def _bernoulli_plus(count: int) -> list[Fraction]:
    """First `count` Bernoulli numbers in the B(1) = +1/2 convention."""
    bernoulli = [Fraction(1)]
    for m in range(1, count):
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * bernoulli[j]
        bernoulli.append(-acc / (m + 1))
    if count > 1:
        bernoulli[1] = Fraction(1, 2)
    return bernoulli


def faulhaber_polynomial(p: int) -> Polynomial:
    """Closed-form polynomial S with S(N) = sum_{i=1..N} i**p."""
    if p < 0:
        raise InputError("power must be nonnegative")
    bern = _bernoulli_plus(p + 1)
    coeffs = [Fraction(0)] * (p + 2)
    for j in range(p + 1):
        coeffs[p + 1 - j] = Fraction(comb(p + 1, j), p + 1) * bern[j]
    return Polynomial(coeffs)


def power_sum(p: int, n_upper: int) -> Fraction:
    """sum_{i=1..N} i**p via the Faulhaber closed form."""
    if n_upper < 0:
        raise InputError("upper limit must be nonnegative")
    return faulhaber_polynomial(p)(n_upper)
