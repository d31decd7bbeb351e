"""Exact arithmetic in the quadratic field Q(sqrt(2)).

Elements are stored as a pair (a, b) of rationals representing a + b*sqrt(2).
The field operations are closed and exact; a + b*sqrt(2) = 0 iff a = b = 0.
"""

from __future__ import annotations

from fractions import Fraction

_SQRT2 = 2 ** 0.5


class QRoot2:
    """A number a + b*sqrt(2) with exact rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if isinstance(a, Fraction) else Fraction(a)
        self.b = b if isinstance(b, Fraction) else Fraction(b)

    @staticmethod
    def _coerce(x):
        if isinstance(x, QRoot2):
            return x
        if isinstance(x, (int, Fraction)):
            return QRoot2(x)
        return NotImplemented

    def __repr__(self):
        if not self.b:
            return f"QRoot2({self.a})"
        return f"QRoot2({self.a}, {self.b})"

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRoot2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QRoot2(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRoot2(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # (a + b r)(c + d r) = ac + 2bd + (ad + bc) r,  r = sqrt(2)
        return QRoot2(self.a * other.a + 2 * self.b * other.b,
                      self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def inverse(self):
        """Field inverse via the conjugate: 1/(a+b r) = (a-b r)/(a^2-2 b^2)."""
        n = self.a * self.a - 2 * self.b * self.b
        if not n:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return QRoot2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self):
        """Galois conjugate a - b*sqrt(2)."""
        return QRoot2(self.a, -self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * _SQRT2

    def __complex__(self):
        return complex(float(self))

    def to_mpf(self, mp):
        """Evaluate exactly in mpmath's working precision."""
        return mp.mpf(self.a.numerator) / self.a.denominator \
            + mp.mpf(self.b.numerator) / self.b.denominator * mp.sqrt(2)


SQRT2 = QRoot2(0, 1)
