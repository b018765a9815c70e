"""Exact scalar arithmetic: generalized binomials and polynomials in the genus.

Every quantity downstream is a polynomial identity in a single symbol g with
rational coefficients, at a fixed integer cover degree d.  This module owns
that coefficient arithmetic.  No floating point appears anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Union

# fractions.Fraction already guarantees lowest terms, a positive denominator
# and canonical equality/hash, which is the normal form assumed throughout.
Rational = Fraction

Scalar = Union[int, Fraction]


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> Fraction:
    """Generalized binomial coefficient C(n, k) via falling factorials.

    Zero for k < 0, otherwise n(n-1)...(n-k+1)/k!, so n may be any integer:
    C(-1, p) = (-1)^p, C(n, k) = 0 for 0 <= n < k, and the Pascal recurrence
    C(n, k) = C(n-1, k-1) + C(n-1, k) holds for every integer n.  The result
    is always integer-valued; it is returned as a Fraction for uniformity.
    """
    if k < 0:
        return Fraction(0)
    num = 1
    for j in range(k):
        num *= n - j
    return Fraction(num, factorial(k))


def _term(c: Fraction, p: int) -> str:
    if p == 0:
        return str(c)
    mono = "g" if p == 1 else f"g^{p}"
    if c == 1:
        return mono
    return f"{c}*{mono}"


class GPoly:
    """Polynomial in the genus symbol g with exact rational coefficients.

    Immutable.  Coefficients are stored ascending with trailing zeros
    trimmed, so equal polynomials compare and hash equal.  A constant
    polynomial compares and hashes equal to its scalar value.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c: Scalar) -> "GPoly":
        return cls((c,))

    @classmethod
    def gen(cls) -> "GPoly":
        """The polynomial g itself."""
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant(self) -> Fraction:
        """The value of a constant polynomial; error if g actually occurs."""
        if self.degree > 0:
            raise ValueError(f"not a constant polynomial: {self}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GPoly((other,))
        if not isinstance(other, GPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return GPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return GPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GPoly((other,))
        if not isinstance(other, GPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GPoly(c * other for c in self.coeffs)
        if not isinstance(other, GPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return GPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return GPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __call__(self, x: Scalar) -> Fraction:
        """Evaluate at a concrete rational genus (Horner)."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * Fraction(x) + c
        return acc

    def __eq__(self, other):
        if isinstance(other, GPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.degree <= 0 and self.constant() == other
        return NotImplemented

    def __hash__(self):
        # constants hash like their scalar value, consistent with __eq__
        if self.degree <= 0:
            return hash(self.constant())
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = ""
        for p in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[p]
            if c == 0:
                continue
            if not out:
                out = "-" + _term(-c, p) if c < 0 else _term(c, p)
            else:
                out += ("-" + _term(-c, p)) if c < 0 else ("+" + _term(c, p))
        return out

    def __repr__(self):
        return f"GPoly({self})"


GP_ZERO = GPoly()
GP_ONE = GPoly((1,))
GENUS = GPoly.gen()
