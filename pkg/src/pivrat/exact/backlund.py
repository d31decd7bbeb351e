"""Backlund transformations acting on symbolic rational PIV solutions.

The four isomonodromic steps shift (theta0, theta_inf) by half-integer
vectors; "twist" is the Lukashevich-Gromak map relating types 3 and 1, and
"flip" is the Boiti-Pempinelli reflection through theta_inf = 1/2.
"""

from __future__ import annotations

from fractions import Fraction

from .ratfunc import RationalFunc


class TransformationUndefined(ArithmeticError):
    """The transformation is indeterminate at these parameters."""


_HALF = Fraction(1, 2)


def _assemble(u, theta0, c2, num_du_sign, den_du_sign, den_t0_sign):
    """Common shape of the four quarter-step formulas:

    num = 16 t0^2 + 8 c2 u^2 - 4 x^2 u^2 - 4 x u^3 - u^4
          + num_du_sign * 8 t0 u' + (u')^2
    den = 2 u (den_t0_sign * 4 t0 + 2 x u + u^2 + den_du_sign * u').
    """
    du = u.deriv()
    x = RationalFunc.x_monomial(like=u)
    u2 = u * u
    num = (16 * theta0 * theta0 + 8 * c2 * u2
           - 4 * x * x * u2 - 4 * x * u2 * u - u2 * u2
           + num_du_sign * 8 * theta0 * du + du * du)
    den = 2 * u * (den_t0_sign * 4 * theta0 + 2 * x * u + u2
                   + den_du_sign * du)
    if den.is_zero():
        raise TransformationUndefined("denominator vanishes identically")
    return (num / den).reduce()


def backlund_ne(u: RationalFunc, theta0, theta_inf):
    """u -> u_NE at (theta0 + 1/2, theta_inf + 1/2)."""
    if theta0 * (theta_inf + theta0) == 0:
        raise TransformationUndefined("NE step requires theta0*(ti+t0) != 0")
    v = _assemble(u, theta0, theta0 + theta_inf, -1, -1, +1)
    return v, theta0 + _HALF, theta_inf + _HALF


def backlund_sw(u: RationalFunc, theta0, theta_inf):
    """u -> u_SW at (theta0 - 1/2, theta_inf - 1/2)."""
    if theta0 * (theta_inf + theta0 - 1) == 0:
        raise TransformationUndefined("SW step requires theta0*(ti+t0-1) != 0")
    v = _assemble(u, theta0, theta0 + theta_inf - 1, +1, +1, +1)
    return v, theta0 - _HALF, theta_inf - _HALF


def backlund_se(u: RationalFunc, theta0, theta_inf):
    """u -> u_SE at (theta0 + 1/2, theta_inf - 1/2)."""
    if theta0 * (theta_inf - theta0 - 1) == 0:
        raise TransformationUndefined("SE step requires theta0*(ti-t0-1) != 0")
    v = _assemble(u, theta0, theta_inf - theta0 - 1, -1, +1, -1)
    return v, theta0 + _HALF, theta_inf - _HALF


def backlund_nw(u: RationalFunc, theta0, theta_inf):
    """u -> u_NW at (theta0 - 1/2, theta_inf + 1/2)."""
    if theta0 * (theta_inf - theta0) == 0:
        raise TransformationUndefined("NW step requires theta0*(ti-t0) != 0")
    v = _assemble(u, theta0, theta_inf - theta0, +1, -1, -1)
    return v, theta0 - _HALF, theta_inf + _HALF


def backlund_twist(u: RationalFunc, theta0, theta_inf):
    """Lukashevich-Gromak map: u'/(2u) - 2 theta0/u - x - u/2.

    Sends (t0, ti) to (-(t0+ti)/2, (3 t0 - ti)/2 + 1); on the lattice it
    carries type-3 solutions with indices (m, n) to type-1 ones at (m, n+1).
    """
    if u.is_zero():
        raise TransformationUndefined("twist of the zero solution")
    x = RationalFunc.x_monomial(like=u)
    v = u.deriv() / (2 * u) - 2 * theta0 / u - x - u * _HALF
    return (v.reduce(), -(theta0 + theta_inf) / 2,
            (3 * theta0 - theta_inf) / 2 + 1)


def backlund_flip(u: RationalFunc, theta0, theta_inf):
    """Boiti-Pempinelli reflection: (t0, 1 - ti, i u(-i x)).

    Requires definite parities so i u(-i x) lands back in the base ring;
    all rational PIV solutions are odd, so the phase always cancels.
    """
    if u.is_zero():
        return u, theta0, 1 - theta_inf
    k, q = u.subs_neg_ix()
    k = (k + 1) % 4          # the leading factor of i
    if k == 0:
        v = q
    elif k == 2:
        v = -q
    else:
        raise ArithmeticError("flip produced a residual factor of i; "
                              "input was not an odd rational function")
    return v, theta0, 1 - theta_inf


DIRECTIONS = {"NE": backlund_ne, "SE": backlund_se, "SW": backlund_sw,
              "NW": backlund_nw, "twist": backlund_twist,
              "flip": backlund_flip}


def backlund(u: RationalFunc, theta0, theta_inf, direction: str):
    """Dispatch a named transformation; returns (u_new, theta0', theta_inf')."""
    try:
        f = DIRECTIONS[direction]
    except KeyError:
        raise ValueError(f"unknown Backlund direction {direction!r}") from None
    return f(u, theta0, theta_inf)
