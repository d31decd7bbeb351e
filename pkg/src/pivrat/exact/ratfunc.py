"""Symbolic rational functions num/den over exact polynomial rings."""

from __future__ import annotations

from fractions import Fraction

from .expoly import ExactPoly
from .qroot2 import QRoot2


def _ring_one(poly: ExactPoly):
    for c in poly.coeffs:
        if isinstance(c, QRoot2):
            return QRoot2(1)
    return Fraction(1)


class RationalFunc:
    """A quotient of ExactPoly values; den is kept monic and nonzero.

    Reduction to lowest terms is *not* automatic (products in Backlund
    chains explode if reduced eagerly at every atom); call reduce() after
    each transformation step.  Equality is decided by cross-multiplication,
    which needs no gcd.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: ExactPoly, den: ExactPoly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        lead = den.leading()
        inv = 1 / lead if isinstance(lead, Fraction) else lead.inverse()
        self.num = num.scale(inv) if not num.is_zero() else num
        self.den = den.scale(inv)

    @classmethod
    def from_scalar(cls, c, like=None):
        one = _ring_one(like.num) if like is not None else Fraction(1)
        return cls(ExactPoly([one * c]) if c else ExactPoly(),
                   ExactPoly([one]))

    @classmethod
    def x_monomial(cls, like=None):
        one = _ring_one(like.num) if like is not None else Fraction(1)
        return cls(ExactPoly([one * 0, one]), ExactPoly([one]))

    def is_zero(self):
        return self.num.is_zero()

    def __repr__(self):
        return f"RationalFunc({self.num!r}, {self.den!r})"

    def _coerce(self, other):
        if isinstance(other, RationalFunc):
            return other
        if isinstance(other, (int, Fraction, QRoot2)):
            return RationalFunc.from_scalar(other, like=self)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunc(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def scale(self, c):
        return RationalFunc(self.num.scale(c), self.den)

    def deriv(self):
        return RationalFunc(self.num.deriv() * self.den
                            - self.num * self.den.deriv(),
                            self.den * self.den)

    def reduce(self):
        """Divide out gcd(num, den); returns a new reduced function."""
        if self.num.is_zero():
            return RationalFunc(ExactPoly(), ExactPoly([_ring_one(self.den)]))
        g = self.num.gcd(self.den)
        if g.degree <= 0:
            return self
        return RationalFunc(self.num.div_exact(g), self.den.div_exact(g))

    def eval_mp(self, x, mp):
        return self.num.eval_mp(x, mp) / self.den.eval_mp(x, mp)

    def subs_neg_ix(self):
        """f(-i x) = i**k q(x); returns (k mod 4, q) for definite parities."""
        kn, num = self.num.subs_neg_ix()
        kd, den = self.den.subs_neg_ix()
        return (kn - kd) % 4, RationalFunc(num, den)
