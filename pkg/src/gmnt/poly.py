"""Dense integer polynomials in one variable.

Coefficients are stored ascending, so IntPolynomial(1, -3, 3) is
3x^2 - 3x + 1.  The arithmetic here stays deliberately small: the rest
of the package only ever needs quadratics and the compositions that
produce them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "IntPolynomial",
    "cyclotomic",
    "aux_quadratic",
    "compose",
    "exact_divide",
    "discriminant",
    "is_irreducible_quadratic",
]


@dataclass(init=False, frozen=True)
class IntPolynomial:
    """Immutable polynomial with int coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __init__(self, *coeffs: int) -> None:
        trimmed = list(coeffs)
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed))

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            other = IntPolynomial(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(*(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(*(-c for c in self.coeffs))

    def __sub__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            other = IntPolynomial(other)
        return self + (-other)

    def __rsub__(self, other: int) -> IntPolynomial:
        return IntPolynomial(other) + (-self)

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            other = IntPolynomial(other)
        if not self or not other:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(*out)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                var = "x" if i == 1 else f"x^{i}"
                term = var if mag == 1 else f"{mag}{var}"
            parts.append(sign + term)
        return "".join(parts)


_CYCLOTOMIC = {
    3: (1, 1, 1),
    4: (1, 0, 1),
    6: (1, -1, 1),
}

# Auxiliary quadratics for the k = 3 construction: the outer polynomial
# 3x^2 - 1 and the two cofactor shapes 3x^2 -+ 3x + 1.
_AUX = {
    0: (-1, 0, 3),
    1: (1, -3, 3),
    2: (1, 3, 3),
}


def cyclotomic(k: int) -> IntPolynomial:
    """Cyclotomic polynomial for k in {3, 4, 6}."""
    if k not in _CYCLOTOMIC:
        raise ValueError(f"k must be one of 3, 4, 6, got {k}")
    return IntPolynomial(*_CYCLOTOMIC[k])


def aux_quadratic(j: int) -> IntPolynomial:
    """The j-th auxiliary quadratic used by the k = 3 construction."""
    if j not in _AUX:
        raise ValueError(f"j must be one of 0, 1, 2, got {j}")
    return IntPolynomial(*_AUX[j])


def compose(outer: IntPolynomial, inner: IntPolynomial) -> IntPolynomial:
    """outer(inner(x))."""
    acc = IntPolynomial()
    for c in reversed(outer.coeffs):
        acc = acc * inner + c
    return acc


def exact_divide(
    numerator: IntPolynomial, denominator: IntPolynomial
) -> IntPolynomial | None:
    """Quotient when denominator divides numerator over the integers.

    Returns None when the division leaves a remainder or produces
    non-integer coefficients.
    """
    if not denominator:
        raise ValueError("division by the zero polynomial")
    if not numerator:
        return IntPolynomial()
    rem = [Fraction(c) for c in numerator.coeffs]
    den = [Fraction(c) for c in denominator.coeffs]
    dn, dd = len(rem) - 1, len(den) - 1
    if dn < dd:
        return None
    quot = [Fraction(0)] * (dn - dd + 1)
    for i in range(dn - dd, -1, -1):
        q = rem[i + dd] / den[dd]
        quot[i] = q
        for j in range(dd + 1):
            rem[i + j] -= q * den[j]
    if any(rem) or any(q.denominator != 1 for q in quot):
        return None
    return IntPolynomial(*(int(q) for q in quot))


def discriminant(poly: IntPolynomial) -> int:
    """b^2 - 4ac for a quadratic."""
    if poly.degree() != 2:
        raise ValueError(f"expected a quadratic, got degree {poly.degree()}")
    c, b, a = poly.coeffs
    return b * b - 4 * a * c


def is_irreducible_quadratic(poly: IntPolynomial) -> bool:
    """True when a primitive quadratic has no rational root.

    Raises on non-quadratics and on non-primitive coefficient vectors,
    since both indicate a construction bug upstream.
    """
    if poly.degree() != 2:
        raise ValueError(f"expected a quadratic, got degree {poly.degree()}")
    if math.gcd(*poly.coeffs) != 1:
        raise ValueError(f"coefficients of {poly} share a common factor")
    d = discriminant(poly)
    return d < 0 or math.isqrt(d) ** 2 != d
