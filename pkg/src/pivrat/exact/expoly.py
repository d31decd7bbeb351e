"""Dense univariate polynomials with exact coefficients.

Coefficients are ascending by degree and live in Q (``Fraction``) or in
Q(sqrt2) (``QRoot2``); the two kinds interoperate since QRoot2 coerces
ints and Fractions.  The zero polynomial has an empty coefficient list.
Division asserts exactness where the caller requires it.
"""

from __future__ import annotations

from fractions import Fraction

from .qroot2 import QRoot2


class InexactDivisionError(ArithmeticError):
    """A polynomial division that must be exact left a remainder."""


def _is_zero(c):
    return not c


class ExactPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = cs

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def x(cls):
        return cls([Fraction(0), Fraction(1)])

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __repr__(self):
        return f"ExactPoly({self.coeffs!r})"

    def __eq__(self, other):
        if not isinstance(other, ExactPoly):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return ExactPoly(out)

    def __neg__(self):
        return ExactPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ExactPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if _is_zero(ca):
                continue
            for j, cb in enumerate(b):
                if _is_zero(cb):
                    continue
                out[i + j] = out[i + j] + ca * cb
        return ExactPoly(out)

    def scale(self, c):
        if _is_zero(c):
            return ExactPoly()
        return ExactPoly([c * a for a in self.coeffs])

    def shift_mul_x(self, k=1):
        """Multiply by x**k."""
        if not self.coeffs:
            return ExactPoly()
        zero = self.coeffs[0] * 0
        return ExactPoly([zero] * k + self.coeffs)

    def deriv(self):
        return ExactPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ExactPoly(), ExactPoly(rem)
        inv_lead = 1 / other.leading() if isinstance(other.leading(), Fraction) \
            else other.leading().inverse()
        quot = [None] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quot[k] = c
            if not _is_zero(c):
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return ExactPoly(quot), ExactPoly(rem)

    def div_exact(self, other):
        """Divide, asserting that the remainder vanishes."""
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InexactDivisionError(
                f"inexact polynomial division (remainder degree {r.degree})")
        return q

    def __call__(self, x):
        """Horner evaluation; x may be Fraction, QRoot2, complex or mpmath."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return 0 * x
        return acc

    def eval_complex(self, z):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    def eval_mp(self, z, mp):
        """Horner evaluation at an mpmath number with exact coefficient lifts."""
        acc = mp.mpf(0)
        for c in reversed(self.coeffs):
            if isinstance(c, QRoot2):
                acc = acc * z + c.to_mpf(mp)
            else:
                acc = acc * z + mp.mpf(c.numerator) / c.denominator
        return acc

    def int_pair_coeffs(self):
        """Clear denominators: returns (A, B, den) of ints with
        coefficient_i = (A[i] + B[i]*sqrt(2)) / den."""
        from math import lcm
        den = 1
        for c in self.coeffs:
            if isinstance(c, QRoot2):
                den = lcm(den, c.a.denominator, c.b.denominator)
            else:
                den = lcm(den, c.denominator)
        A, B = [], []
        for c in self.coeffs:
            if isinstance(c, QRoot2):
                A.append(c.a.numerator * (den // c.a.denominator))
                B.append(c.b.numerator * (den // c.b.denominator))
            else:
                A.append(c.numerator * (den // c.denominator))
                B.append(0)
        return A, B, den

    def parity(self):
        """+1 if even, -1 if odd, 0 if mixed or zero polynomial."""
        if not self.coeffs:
            return 0
        has_even = any(not _is_zero(c) for c in self.coeffs[0::2])
        has_odd = any(not _is_zero(c) for c in self.coeffs[1::2])
        if has_even and not has_odd:
            return 1
        if has_odd and not has_even:
            return -1
        return 0

    def subs_neg_x(self):
        """p(-x)."""
        return ExactPoly([c if i % 2 == 0 else -c
                          for i, c in enumerate(self.coeffs)])

    def subs_scaled(self, c):
        """p(c*x) for an exact scalar c."""
        out, p = [], None
        for i, a in enumerate(self.coeffs):
            p = (1 if isinstance(a, Fraction) else QRoot2(1)) if i == 0 else p * c
            out.append(a * p)
        return ExactPoly(out)

    def subs_neg_ix(self):
        """p(-i x) = i**k * q(x) for a definite-parity p; returns (k mod 4, q).

        Requires definite parity so the result has coefficients in the base
        ring; every gH/gO polynomial qualifies.
        """
        par = self.parity()
        if par == 0 and not self.is_zero():
            raise ValueError("subs_neg_ix requires a definite-parity polynomial")
        if self.is_zero():
            return 0, ExactPoly()
        # (-i)^k = (-i)^(k mod 4); pull out the common i-power by parity.
        base = 0 if par == 1 else 3          # (-i)^1 = -i = i^3
        out = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                out.append(c)
                continue
            # (-i)^i / i^base is (+-1); i even: (-1)^(i/2), i odd: i^3*(-1)^((i-1)/2)/i^3
            half = i // 2
            out.append(c if half % 2 == 0 else -c)
        return base, ExactPoly(out)

    def gcd(self, other):
        """Monic gcd by the Euclidean algorithm over the coefficient field."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        lead = a.leading()
        inv = 1 / lead if isinstance(lead, Fraction) else lead.inverse()
        return a.scale(inv)

    def to_json(self):
        """Serialize per the polynomial wire schema (ascending coefficients)."""
        if any(isinstance(c, QRoot2) for c in self.coeffs):
            return {"ring": "Q(sqrt2)",
                    "coeffs": [[[c.a.numerator, c.a.denominator],
                                [c.b.numerator, c.b.denominator]]
                               for c in (q if isinstance(q, QRoot2) else QRoot2(q)
                                         for q in self.coeffs)]}
        return {"ring": "Q",
                "coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc):
        if doc["ring"] == "Q":
            return cls([Fraction(n, d) for n, d in doc["coeffs"]])
        if doc["ring"] == "Q(sqrt2)":
            return cls([QRoot2(Fraction(an, ad), Fraction(bn, bd))
                        for (an, ad), (bn, bd) in doc["coeffs"]])
        raise ValueError(f"unknown coefficient ring {doc['ring']!r}")


def poly_from_ints(ints):
    return ExactPoly([Fraction(c) for c in ints])
