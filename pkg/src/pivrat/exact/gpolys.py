"""Generalized Hermite and Okamoto polynomial families.

Both families satisfy bilinear differential recurrences in the two integer
indices; every recurrence step performs an exact polynomial division whose
remainder must vanish, and that exactness is asserted on every fill.  The
tables are memoized per family and safe for concurrent readers (insertion is
serialized by a lock).
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .expoly import ExactPoly
from .qroot2 import QRoot2, SQRT2

_ONE = ExactPoly([Fraction(1)])
_TWO_X = ExactPoly([Fraction(0), Fraction(2)])
_ONE_Q = ExactPoly([QRoot2(1)])
_SQRT2_X = ExactPoly([QRoot2(0), SQRT2])

_gh_cache = {(0, 0): _ONE, (1, 0): _ONE, (0, 1): _ONE, (1, 1): _TWO_X}
_go_cache = {(0, 0): _ONE_Q, (1, 0): _ONE_Q, (0, 1): _ONE_Q, (1, 1): _SQRT2_X}
_lock = threading.Lock()


def _bilinear(p, extra):
    """p*p'' - (p')**2 + extra*p**2, the common core of both recurrences."""
    dp = p.deriv()
    return p * p.deriv().deriv() - dp * dp + extra * (p * p)


def gh_poly(m, n):
    """Generalized Hermite polynomial H_{m,n}, m, n >= 0.

    Defined by H_{0,0}=H_{1,0}=H_{0,1}=1, H_{1,1}=2x and the recurrences
      2m H_{m+1,n} H_{m-1,n} =  H H'' - (H')^2 + 2m H^2
      2n H_{m,n+1} H_{m,n-1} = -H H'' + (H')^2 + 2n H^2
    evaluated at H = H_{m,n}.  deg H_{m,n} = m*n.
    """
    if m < 0 or n < 0:
        raise ValueError("gH indices must be nonnegative")
    got = _gh_cache.get((m, n))
    if got is not None:
        return got
    with _lock:
        return _gh_fill(m, n)


def _gh_fill(m, n):
    got = _gh_cache.get((m, n))
    if got is not None:
        return got
    if n <= 1:
        # along rows n=0,1 step in m with the first recurrence
        p = _gh_fill(m - 1, n)
        q = _gh_fill(m - 2, n)
        num = _bilinear(p, ExactPoly([Fraction(2 * (m - 1))]))
        val = num.div_exact(q.scale(Fraction(2 * (m - 1))))
    else:
        # columns stepped upward in n with the second recurrence
        p = _gh_fill(m, n - 1)
        q = _gh_fill(m, n - 2)
        num = -_bilinear(p, ExactPoly([Fraction(-2 * (n - 1))]))
        val = num.div_exact(q.scale(Fraction(2 * (n - 1))))
    assert val.degree == m * n, f"deg H_{{{m},{n}}} = {val.degree} != {m * n}"
    _gh_cache[(m, n)] = val
    return val


def go_poly(m, n):
    """Generalized Okamoto polynomial Q_{m,n}, (m,n) in Z x Z.

    Defined by Q_{0,0}=Q_{1,0}=Q_{0,1}=1, Q_{1,1}=sqrt(2) x and
      Q_{m+1,n} Q_{m-1,n} = (9/2)[Q Q'' - (Q')^2] + [2x^2+3(2m+n-1)] Q^2
      Q_{m,n+1} Q_{m,n-1} = (9/2)[Q Q'' - (Q')^2] + [2x^2+3(1-m-2n)] Q^2
    at Q = Q_{m,n}.  Indices with n < 0 are first rewritten using the
    symmetry Q_{m,n} = Q_{n,1-m-n} = Q_{1-m-n,m}; the remaining half-plane
    n >= 0 is filled by running the m-recurrence in both directions (the
    divisor is a nonzero polynomial throughout, and exactness is asserted).
    """
    m, n = _go_canonical(m, n)
    got = _go_cache.get((m, n))
    if got is not None:
        return got
    with _lock:
        return _go_fill(m, n)


def _go_canonical(m, n):
    orbit = [(m, n), (n, 1 - m - n), (1 - m - n, m)]
    for mm, nn in orbit:
        if mm >= 0 and nn >= 0:
            return mm, nn
    for mm, nn in orbit:
        if nn >= 0:
            return mm, nn
    raise AssertionError("gO symmetry orbit has no representative with n >= 0")


def _go_rhs(p, c):
    """(9/2)[p p'' - (p')^2] + [2x^2 + 3c] p^2."""
    dp = p.deriv()
    half9 = QRoot2(Fraction(9, 2))
    quad = ExactPoly([QRoot2(3 * c), QRoot2(0), QRoot2(2)])
    return (p * p.deriv().deriv() - dp * dp).scale(half9) + quad * (p * p)


def _go_fill(m, n):
    got = _go_cache.get((m, n))
    if got is not None:
        return got
    if m >= 2 and n <= 1:
        # rows n=0,1 rightward in m
        p, q = _go_fill(m - 1, n), _go_fill(m - 2, n)
        val = _go_rhs(p, 2 * (m - 1) + n - 1).div_exact(q)
    elif 0 <= m and n >= 2:
        # columns upward in n
        p, q = _go_fill(m, n - 1), _go_fill(m, n - 2)
        val = _go_rhs(p, 1 - m - 2 * (n - 1)).div_exact(q)
    elif m < 0:
        # leftward in m (same recurrence solved for the smaller index)
        p, q = _go_fill(m + 1, n), _go_fill(m + 2, n)
        val = _go_rhs(p, 2 * (m + 1) + n - 1).div_exact(q)
    else:
        raise AssertionError(f"unreachable gO fill at ({m},{n})")
    if m >= 0 and n >= 0:
        want = m * n + m * (m - 1) + n * (n - 1)
        assert val.degree == want, \
            f"deg Q_{{{m},{n}}} = {val.degree} != {want}"
    _go_cache[(m, n)] = val
    return val


def go_degree(m, n):
    """Degree of Q_{m,n} for arbitrary integer indices (via the symmetry)."""
    mm, nn = _go_canonical(m, n)
    if mm >= 0 and nn >= 0:
        return mm * nn + mm * (mm - 1) + nn * (nn - 1)
    return go_poly(m, n).degree
