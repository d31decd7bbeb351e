"""Rational Painleve-IV solutions assembled from gH/gO polynomial factors.

Each family/type row gives parameters (theta0, theta_inf) and a solution
u = scalar * num1 * num2 / (den1 * den2).  The PIV residual is formed
symbolically and vanishes identically exactly when u solves the equation
  2 u u'' - (u')^2 - 3 u^4 - 8 x u^3 - 4 (x^2 + 1 - 2 theta_inf) u^2
      + 16 theta0^2 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expoly import ExactPoly
from .gpolys import gh_poly, go_poly
from .qroot2 import QRoot2
from .ratfunc import RationalFunc


class LatticeError(ValueError):
    """Index pair outside the admissible lattice for the requested family."""


@dataclass(frozen=True)
class ParameterPoint:
    family: str          # "gH" or "gO"
    type_j: int          # 1, 2, 3
    m: int
    n: int

    def __post_init__(self):
        if self.family not in ("gH", "gO"):
            raise LatticeError(f"unknown family {self.family!r}")
        if self.type_j not in (1, 2, 3):
            raise LatticeError(f"unknown type {self.type_j}")
        if self.family == "gH":
            if self.m < 0 or self.n < 0:
                raise LatticeError("gH indices must be nonnegative")
        # gO rows are valid on all of Z x Z.

    @property
    def theta0(self) -> Fraction:
        m, n, j = self.m, self.n, self.type_j
        if self.family == "gH":
            return [Fraction(-n, 2), Fraction(-m, 2),
                    Fraction(1 + m + n, 2)][j - 1]
        return [Fraction(1, 6) - Fraction(n, 2),
                Fraction(1, 6) - Fraction(m, 2),
                Fraction(1, 6) + Fraction(m + n, 2)][j - 1]

    @property
    def theta_inf(self) -> Fraction:
        m, n, j = self.m, self.n, self.type_j
        if self.family == "gH":
            return [Fraction(2 + 2 * m + n, 2), Fraction(-m - 2 * n, 2),
                    Fraction(1 + n - m, 2)][j - 1]
        return [Fraction(1, 2) + m + Fraction(n, 2),
                Fraction(1, 2) - Fraction(m, 2) - n,
                Fraction(1, 2) + Fraction(n - m, 2)][j - 1]


@dataclass(frozen=True)
class RationalSolution:
    params: ParameterPoint
    num1: ExactPoly
    num2: ExactPoly
    den1: ExactPoly
    den2: ExactPoly
    scalar: object       # Fraction or QRoot2

    def as_ratfunc(self) -> RationalFunc:
        return RationalFunc(self.num1 * self.num2, self.den1 * self.den2) \
            .scale(self.scalar)

    def is_zero(self):
        return not self.scalar

    def eval_mp(self, x, mp):
        num = self.num1.eval_mp(x, mp) * self.num2.eval_mp(x, mp)
        den = self.den1.eval_mp(x, mp) * self.den2.eval_mp(x, mp)
        s = self.scalar.to_mpf(mp) if isinstance(self.scalar, QRoot2) \
            else mp.mpf(self.scalar.numerator) / self.scalar.denominator
        return s * num / den

    def to_json(self):
        return {"family": self.params.family, "type": self.params.type_j,
                "m": self.params.m, "n": self.params.n,
                "theta0": [self.params.theta0.numerator,
                           self.params.theta0.denominator],
                "theta_inf": [self.params.theta_inf.numerator,
                              self.params.theta_inf.denominator],
                "scalar": ExactPoly([self.scalar]).to_json(),
                "num1": self.num1.to_json(), "num2": self.num2.to_json(),
                "den1": self.den1.to_json(), "den2": self.den2.to_json()}


def rational_solution(p: ParameterPoint) -> RationalSolution:
    """Assemble the unique rational solution for the given lattice point."""
    m, n, j = p.m, p.n, p.type_j
    if p.family == "gH":
        if j == 1:
            if n == 0:
                # scalar 2n vanishes; u is identically zero (theta0 = 0)
                one = ExactPoly([Fraction(1)])
                return RationalSolution(p, one, one, one, one, Fraction(0))
            return RationalSolution(p, gh_poly(m, n + 1), gh_poly(m + 1, n - 1),
                                    gh_poly(m, n), gh_poly(m + 1, n),
                                    Fraction(2 * n))
        if j == 2:
            if m == 0:
                one = ExactPoly([Fraction(1)])
                return RationalSolution(p, one, one, one, one, Fraction(0))
            return RationalSolution(p, gh_poly(m - 1, n + 1), gh_poly(m + 1, n),
                                    gh_poly(m, n), gh_poly(m, n + 1),
                                    Fraction(-2 * m))
        return RationalSolution(p, gh_poly(m, n), gh_poly(m + 1, n + 1),
                                gh_poly(m, n + 1), gh_poly(m + 1, n),
                                Fraction(-1))
    scal = QRoot2(0, Fraction(-1, 3))          # -sqrt(2)/3
    if j == 1:
        return RationalSolution(p, go_poly(m, n + 1), go_poly(m + 1, n - 1),
                                go_poly(m, n), go_poly(m + 1, n), scal)
    if j == 2:
        return RationalSolution(p, go_poly(m - 1, n + 1), go_poly(m + 1, n),
                                go_poly(m, n), go_poly(m, n + 1), scal)
    return RationalSolution(p, go_poly(m, n), go_poly(m + 1, n + 1),
                            go_poly(m, n + 1), go_poly(m + 1, n), scal)


def piv_residual_ratfunc(u: RationalFunc, theta0: Fraction,
                         theta_inf: Fraction) -> ExactPoly:
    """PIV residual of a symbolic rational u = N/D with denominators cleared.

    With W = N'D - N D' (so u' = W/D^2, u'' = (W'D - 2WD')/D^3 and
    W' = N''D - N D''), the residual times D^4 is the polynomial

      2 N (W'D - 2WD') - W^2 - 3 N^4 - 8 x N^3 D
        - 4 (x^2 + 1 - 2 theta_inf) N^2 D^2 + 16 theta0^2 D^4,

    which is the zero polynomial iff u solves the equation.
    """
    N, D = u.num, u.den
    dN, dD = N.deriv(), D.deriv()
    W = dN * D - N * dD
    dW = N.deriv().deriv() * D - N * D.deriv().deriv()
    N2, D2 = N * N, D * D
    c1 = Fraction(1)
    quad = ExactPoly([c1 * (4 - 8 * theta_inf), c1 * 0, c1 * 4])
    r = ((N * (dW * D - (W * dD).scale(c1 * 2))).scale(c1 * 2)
         - W * W
         - (N2 * N2).scale(c1 * 3)
         - (N2 * N * D).shift_mul_x(1).scale(c1 * 8)
         - quad * N2 * D2
         + (D2 * D2).scale(16 * theta0 * theta0))
    return r


def piv_residual(sol: RationalSolution) -> ExactPoly:
    if sol.is_zero():
        t0 = sol.params.theta0
        c = 16 * t0 * t0
        return ExactPoly([Fraction(c)]) if c else ExactPoly()
    return piv_residual_ratfunc(sol.as_ratfunc(), sol.params.theta0,
                                sol.params.theta_inf)


def _hor2(A, B, k):
    """Integer Horner for (A[i] + B[i] sqrt2) x^i at integer x = k."""
    a = b = 0
    for ca, cb in zip(reversed(A), reversed(B)):
        a = a * k + ca
        b = b * k + cb
    return a, b


def _mul2(p, q):
    """(a1 + b1 r)(a2 + b2 r), r = sqrt(2), over integer pairs."""
    return p[0] * q[0] + 2 * p[1] * q[1], p[0] * q[1] + p[1] * q[0]


def piv_residual_is_zero(sol: RationalSolution) -> bool:
    """Exact zero test of the cleared residual by point evaluation.

    Evaluating the residual (degree <= B) at B+1 distinct integer points
    proves or refutes the zero polynomial without building its coefficient
    list.  All inner arithmetic runs over integers in Z[sqrt2]; the common
    denominators scale every term by the same power and cannot affect
    vanishing.
    """
    if sol.is_zero():
        return sol.params.theta0 == 0
    u = sol.as_ratfunc()
    N, D = u.num, u.den
    polys = [N, D, N.deriv(), D.deriv(),
             N.deriv().deriv(), D.deriv().deriv()]
    dens = []
    cleared = []
    for p in polys:
        A, B, den = p.int_pair_coeffs()
        cleared.append((A, B))
        dens.append(den)
    from math import lcm
    L = lcm(*dens)
    cleared = [([a * (L // den) for a in A], [b * (L // den) for b in B])
               for (A, B), den in zip(cleared, dens)]
    t0, ti = sol.params.theta0, sol.params.theta_inf
    # 4(x^2 + 1 - 2 ti) and 16 t0^2 as integer pairs over a scalar denominator
    q1 = 4 - 8 * ti
    c0 = 16 * t0 * t0
    sden = lcm(q1.denominator, c0.denominator)
    q1i, c0i = q1.numerator * (sden // q1.denominator), \
        c0.numerator * (sden // c0.denominator)
    dn, dd = N.degree, D.degree
    bound = max(2 * dn + 2 * dd + 2, 4 * dn, 3 * dn + dd + 1, 4 * dd)
    (NA, NB), (DA, DB), (dNA, dNB), (dDA, dDB), (ddNA, ddNB), (ddDA, ddDB) \
        = cleared
    for k in range(bound + 1):
        nv = _hor2(NA, NB, k)
        dv = _hor2(DA, DB, k)
        dnv = _hor2(dNA, dNB, k)
        ddv = _hor2(dDA, dDB, k)
        ddnv = _hor2(ddNA, ddNB, k)
        dddv = _hor2(ddDA, ddDB, k)
        w = tuple(x - y for x, y in zip(_mul2(dnv, dv), _mul2(nv, ddv)))
        dw = tuple(x - y for x, y in zip(_mul2(ddnv, dv), _mul2(nv, dddv)))
        nv2, dv2 = _mul2(nv, nv), _mul2(dv, dv)
        t1 = _mul2(nv, tuple(2 * (x - 2 * y) for x, y in
                             zip(_mul2(dw, dv), _mul2(w, ddv))))
        t2 = _mul2(w, w)
        t3 = _mul2(nv2, nv2)
        t4 = _mul2(nv2, _mul2(nv, dv))
        t5 = _mul2(nv2, dv2)
        t6 = _mul2(dv2, dv2)
        # common factor L^4; scalar coefficients put over sden
        a = (sden * (t1[0] - t2[0] - 3 * t3[0] - 8 * k * t4[0])
             - (4 * k * k * sden + q1i) * t5[0] + c0i * t6[0])
        b = (sden * (t1[1] - t2[1] - 3 * t3[1] - 8 * k * t4[1])
             - (4 * k * k * sden + q1i) * t5[1] + c0i * t6[1])
        if a or b:
            return False
    return True


# Proposition-style origin classification: entry (j, m%2, n%2) -> tag, where
# "zero+"/"zero-" mean u'(0) = +/- 4*theta0 and "pole+"/"pole-" residue +/- 1.
_ORIGIN_TABLE = {
    (1, 0, 0): "zero-", (1, 1, 0): "zero+", (1, 0, 1): "pole+", (1, 1, 1): "pole-",
    (2, 0, 0): "zero-", (2, 1, 0): "pole-", (2, 0, 1): "zero+", (2, 1, 1): "pole+",
    (3, 0, 0): "zero-", (3, 1, 0): "pole+", (3, 0, 1): "pole-", (3, 1, 1): "zero+",
}


@dataclass(frozen=True)
class OriginBehavior:
    tag: str             # one of zero+/zero-/pole+/pole-
    kind: str            # "zero" or "pole"
    table_sign: int      # sign relative to theta0 (zeros) or the residue (poles)
    deriv_sign: int      # for zeros: u'(0) = deriv_sign * 4 |theta0|; 0 for poles
    residue: int         # for poles: +-1; 0 for zeros


def origin_behavior(p: ParameterPoint) -> OriginBehavior:
    tag = _ORIGIN_TABLE[(p.type_j, p.m % 2, p.n % 2)]
    sign = 1 if tag.endswith("+") else -1
    if tag.startswith("zero"):
        s0 = 1 if p.theta0 > 0 else (-1 if p.theta0 < 0 else 0)
        return OriginBehavior(tag, "zero", sign, sign * s0, 0)
    return OriginBehavior(tag, "pole", sign, 0, sign)


@dataclass(frozen=True)
class ZeroPoleData:
    zeros: list          # (location, u'(x0) value, sign of derivative)
    poles: list          # (location, residue value, sign of residue)


def zeros_and_poles(sol: RationalSolution, digits=30, tol=1e-8):
    """Roots of the four factors, classified with derivative/residue signs.

    Derivatives at zeros and residues at poles are evaluated from the
    factorized form in mpmath working precision after root refinement.
    Asserts that numerator and denominator factors share no root (the
    factors are observed coprime; this is checked, not assumed).
    """
    from mpmath import mp

    from ..numerics.roots import eval_mp_safe, poly_roots_exact

    if sol.is_zero():
        return ZeroPoleData([], [])
    t0 = abs(float(sol.params.theta0))
    zroots = [r for f in (sol.num1, sol.num2) if f.degree > 0
              for r in poly_roots_exact(f, digits=digits)]
    proots = [r for f in (sol.den1, sol.den2) if f.degree > 0
              for r in poly_roots_exact(f, digits=digits)]
    sep = min((abs(complex(a) - complex(b)) for a in zroots for b in proots),
              default=1.0)
    if sep < tol:
        raise ArithmeticError(
            f"numerator/denominator factors share a root (sep={sep:g})")
    n1, n2, d1, d2 = sol.num1, sol.num2, sol.den1, sol.den2
    with mp.workdps(digits):
        s = sol.scalar.to_mpf(mp) if isinstance(sol.scalar, QRoot2) \
            else mp.mpf(sol.scalar.numerator) / sol.scalar.denominator

    def at(p, r):
        return eval_mp_safe(p, r, mp, digits=25)

    zeros = []
    for r in zroots:
        in1 = abs(at(n1, r)) < abs(at(n2, r))
        f, g = (n1, n2) if in1 else (n2, n1)
        with mp.workdps(digits + 10):
            du = complex(s * at(f.deriv(), r) * at(g, r)
                         / (at(d1, r) * at(d2, r)))
        if abs(abs(du) - 4 * t0) > tol * max(1.0, 4 * t0):
            raise ArithmeticError(
                f"zero at {complex(r)} has |u'|={abs(du)}, want {4 * t0}")
        zeros.append((complex(r), du, 1 if du.real > 0 else -1))
    poles = []
    for r in proots:
        in1 = abs(at(d1, r)) < abs(at(d2, r))
        f, g = (d1, d2) if in1 else (d2, d1)
        with mp.workdps(digits + 10):
            res = complex(s * at(n1, r) * at(n2, r)
                          / (at(f.deriv(), r) * at(g, r)))
        if min(abs(res - 1), abs(res + 1)) > tol:
            raise ArithmeticError(
                f"pole at {complex(r)} has residue {res}, want +-1")
        poles.append((complex(r), res, 1 if abs(res - 1) < abs(res + 1)
                      else -1))
    return ZeroPoleData(zeros, poles)
