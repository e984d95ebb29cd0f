"""Exact scalars of the form q*sqrt(r) with q, r rational.

Boosts between linearly-related chains rescale interval pairs by sqrt(m/n)
and rates by its inverse.  Carrying the coefficient and the radicand as
fractions lets a boost and its inverse cancel exactly, so quadratic
invariants (interval scalars, rate products, mass squared) survive
transforms without floating-point drift.  A value degrades to float only
when mixed with floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational


def _rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        raise ValueError("square root of a negative rational")
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class Surd:
    """The number ``coeff * sqrt(radicand)`` with rational parts.

    ``radicand`` is positive and equals 1 exactly when the value is rational.
    Instances are immutable; arithmetic with ints and Fractions stays exact,
    arithmetic with floats returns floats.
    """

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff, radicand=1):
        coeff = Fraction(coeff)
        radicand = Fraction(radicand)
        if radicand <= 0:
            if coeff == 0 and radicand == 0:
                radicand = Fraction(1)
            else:
                raise ValueError("radicand must be positive")
        if coeff == 0:
            radicand = Fraction(1)
        else:
            root = _rational_sqrt(radicand)
            if root is not None:
                coeff *= root
                radicand = Fraction(1)
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("Surd values are immutable")

    # -- predicates and conversions -------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is irrational")
        return self.coeff

    def squared(self) -> Fraction:
        """Exact square, always rational."""
        return self.coeff * self.coeff * self.radicand

    def __float__(self) -> float:
        return float(self.coeff) * math.sqrt(float(self.radicand))

    def __bool__(self) -> bool:
        return self.coeff != 0

    def __repr__(self) -> str:
        if self.is_rational:
            return f"Surd({self.coeff})"
        return f"Surd({self.coeff}, radicand={self.radicand})"

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.coeff)
        if self.coeff == 1:
            return f"sqrt({self.radicand})"
        return f"({self.coeff})*sqrt({self.radicand})"

    # -- arithmetic ------------------------------------------------------

    def __neg__(self) -> "Surd":
        return Surd(-self.coeff, self.radicand)

    def __abs__(self) -> "Surd":
        return Surd(abs(self.coeff), self.radicand)

    def __add__(self, other):
        if isinstance(other, Rational):
            other = Surd(other)
        elif isinstance(other, float):
            return float(self) + other
        elif not isinstance(other, Surd):
            return NotImplemented
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        if self.radicand == other.radicand:
            return Surd(self.coeff + other.coeff, self.radicand)
        ratio = _rational_sqrt(self.radicand / other.radicand)
        if ratio is None:
            raise ValueError(
                "cannot add surds with incommensurable radicands "
                f"{self.radicand} and {other.radicand}"
            )
        return Surd(self.coeff * ratio + other.coeff, other.radicand)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, float):
            return float(self) - other
        return self + (-other if isinstance(other, Surd) else -Fraction(other))

    def __rsub__(self, other):
        if isinstance(other, float):
            return other - float(self)
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return Surd(self.coeff * other, self.radicand)
        if isinstance(other, float):
            return float(self) * other
        if isinstance(other, Surd):
            return Surd(self.coeff * other.coeff, self.radicand * other.radicand)
        return NotImplemented

    __rmul__ = __mul__

    def _inverse(self) -> "Surd":
        if self.coeff == 0:
            raise ZeroDivisionError("division by zero surd")
        # 1/(q*sqrt(r)) == (1/(q*r)) * sqrt(r)
        return Surd(1 / (self.coeff * self.radicand), self.radicand)

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return Surd(self.coeff / other, self.radicand)
        if isinstance(other, float):
            return float(self) / other
        if isinstance(other, Surd):
            return self * other._inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        if isinstance(other, Rational):
            return self._inverse() * other
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self._inverse() ** (-exponent)
        half, odd = divmod(exponent, 2)
        coeff = self.coeff**exponent * self.radicand**half
        return Surd(coeff, self.radicand if odd else 1)

    # -- ordering --------------------------------------------------------

    def _sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    @staticmethod
    def _coerce(other) -> "Surd | None":
        if isinstance(other, Surd):
            return other
        if isinstance(other, Rational):
            return Surd(other)
        return None

    def __eq__(self, other):
        if isinstance(other, float):
            return float(self) == other
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._sign() == rhs._sign() and self.squared() == rhs.squared()

    def __hash__(self):
        if self.is_rational:
            return hash(self.coeff)
        return hash((self._sign(), self.squared(), "surd"))

    def _compare(self, other) -> int:
        rhs = self._coerce(other)
        if rhs is None:
            raise TypeError(f"cannot compare Surd with {type(other).__name__}")
        s, t = self._sign(), rhs._sign()
        if s != t:
            return -1 if s < t else 1
        a, b = self.squared(), rhs.squared()
        if a == b:
            return 0
        # same sign: larger square means larger magnitude
        return (-1 if a < b else 1) * (1 if s >= 0 else -1)

    def __lt__(self, other):
        if isinstance(other, float):
            return float(self) < other
        return self._compare(other) < 0

    def __le__(self, other):
        if isinstance(other, float):
            return float(self) <= other
        return self._compare(other) <= 0

    def __gt__(self, other):
        if isinstance(other, float):
            return float(self) > other
        return self._compare(other) > 0

    def __ge__(self, other):
        if isinstance(other, float):
            return float(self) >= other
        return self._compare(other) >= 0


def sqrt_exact(value) -> Surd:
    """Exact square root of a nonnegative rational (or rational-valued Surd)."""
    if isinstance(value, Surd):
        value = value.as_fraction()
    value = Fraction(value)
    if value < 0:
        raise ValueError("square root of a negative value")
    if value == 0:
        return Surd(0)
    return Surd(1, value)


def collapse(value):
    """Fold a rational-valued Surd back into a plain Fraction; pass others through."""
    if isinstance(value, Surd) and value.is_rational:
        return value.as_fraction()
    return value
