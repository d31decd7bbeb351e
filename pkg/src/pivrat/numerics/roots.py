"""Complex polynomial root finding with extended-precision refinement."""

from __future__ import annotations

import numpy as np


class PrecisionError(ArithmeticError):
    """Root refinement failed to reach the requested precision."""


def _aberth(coeffs_desc, roots, iters=60, tol=1e-14):
    """Aberth-Ehrlich simultaneous refinement in double precision."""
    p = np.asarray(coeffs_desc, dtype=complex)
    dp = np.polyder(p)
    z = np.array(roots, dtype=complex)
    n = len(z)
    for _ in range(iters):
        pv = np.polyval(p, z)
        dv = np.polyval(dp, z)
        newton = np.where(dv != 0, pv / np.where(dv == 0, 1, dv), 0)
        corr = np.zeros_like(z)
        for i in range(n):
            diff = z[i] - np.delete(z, i)
            corr[i] = np.sum(1.0 / diff[diff != 0])
        step = newton / (1 - newton * corr)
        z = z - step
        if np.max(np.abs(step)) < tol * max(1.0, np.max(np.abs(z))):
            break
    return z


def poly_roots(coeffs, refine=True):
    """All roots of sum(coeffs[i] x^i); returns (roots, multiplicities).

    Seeds with the companion-matrix eigenvalues and polishes with the
    Aberth-Ehrlich simultaneous iteration.  Roots closer than a relative
    clustering tolerance are merged and flagged with their multiplicity.
    """
    cs = list(map(complex, coeffs))
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        raise ValueError("polynomial must have positive degree")
    desc = np.array(cs[::-1], dtype=complex)
    seeds = np.roots(desc)
    z = _aberth(desc, seeds) if refine and len(seeds) > 2 else seeds
    scale = max(1.0, float(np.max(np.abs(z))))
    used = np.zeros(len(z), dtype=bool)
    roots, mults = [], []
    for i in range(len(z)):
        if used[i]:
            continue
        cluster = [i]
        for j in range(i + 1, len(z)):
            if not used[j] and abs(z[j] - z[i]) < 1e-7 * scale:
                cluster.append(j)
        used[cluster] = True
        roots.append(complex(np.mean(z[cluster])))
        mults.append(len(cluster))
    return roots, mults


def _scaled_float_coeffs(poly, lam):
    """Float coefficients of p(lam*w)/max|coeff| computed overflow-safely."""
    from mpmath import mp
    with mp.workdps(40):
        vals = [poly.coeffs[i] for i in range(len(poly.coeffs))]
        mps = []
        for i, c in enumerate(vals):
            from ..exact.qroot2 import QRoot2
            if isinstance(c, QRoot2):
                cc = c.to_mpf(mp)
            else:
                cc = mp.mpf(c.numerator) / c.denominator
            mps.append(cc * mp.mpf(lam) ** i)
        mx = max(abs(c) for c in mps)
        return [float(c / mx) for c in mps]


def poly_roots_exact(poly, digits=30, max_newton=60):
    """Roots of an exact polynomial, Newton-refined in mpmath precision.

    The variable is rescaled to balance the coefficients before seeding with
    the double-precision eigenvalue solver, then each seed is polished by
    Newton iteration with exact-coefficient Horner evaluation.
    """
    from mpmath import mp

    if poly.degree <= 0:
        return []
    # balance: lam ~ |a0/an|^(1/n) without leaving exact arithmetic
    from mpmath import mpf
    with mp.workdps(30):
        A, B, _ = poly.int_pair_coeffs()
        lead = abs(mpf(A[-1]) + mpf(B[-1]) * mp.sqrt(2))
        low = next((abs(mpf(a) + mpf(b) * mp.sqrt(2))
                    for a, b in zip(A, B) if a or b), lead)
        lam = float((low / lead) ** (mpf(1) / poly.degree)) if lead else 1.0
        lam = min(max(lam, 1e-6), 1e6)
    fc = _scaled_float_coeffs(poly, lam)
    seeds, _ = poly_roots(fc)
    dp = poly.deriv()
    out = []
    root_scale = max(max(abs(w) for w in seeds) * lam, 1e-12)
    cond = eval_condition_log10(poly, root_scale)
    for w in seeds:
        r = mp.mpc(w) * lam
        # precision budget: requested digits plus the cancellation spread
        # of Horner evaluation near the root circle
        with mp.workdps(digits + 12):
            dval = dp.eval_mp(r, mp)
            loss = max(0.0, float(cond - mp.log10(max(abs(dval * r),
                                                      mp.mpf(1)))))
        with mp.workdps(int(digits + loss) + 12):
            target = mp.mpf(10) ** (-digits)
            ok = False
            for _ in range(max_newton):
                pv = poly.eval_mp(r, mp)
                dv = dp.eval_mp(r, mp)
                if dv == 0:
                    break
                step = pv / dv
                r = r - step
                if abs(step) < target * max(1, abs(r)):
                    ok = True
                    break
            if not ok:
                raise PrecisionError(
                    f"Newton refinement stalled near {complex(r)}")
            out.append(r)
    return out


def _coeff_log10(c):
    from fractions import Fraction

    from ..exact.qroot2 import QRoot2
    if isinstance(c, QRoot2):
        vals = [c.a, c.b]
    else:
        vals = [c]
    best = -1e18
    for v in vals:
        if v:
            best = max(best, (v.numerator.bit_length()
                              - v.denominator.bit_length()) * 0.3010299957)
    return best


def eval_condition_log10(poly, r_abs):
    """log10 of the largest Horner term of poly at |x| = r_abs; the spread
    between this and log10|p(x)| measures the cancellation (in digits)
    incurred by plain evaluation."""
    import math as _m
    if r_abs <= 0:
        r_abs = 1e-300
    lr = _m.log10(r_abs)
    return max((_coeff_log10(c) + i * lr
                for i, c in enumerate(poly.coeffs) if c), default=0.0)


def eval_mp_safe(poly, r, mp, digits):
    """Evaluate with enough working precision that the result carries about
    `digits` significant digits despite Horner cancellation."""
    cond = eval_condition_log10(poly, abs(complex(r)))
    extra = 10.0
    for _ in range(4):
        with mp.workdps(int(digits + extra) + 5):
            val = poly.eval_mp(mp.mpc(r), mp)
            if val == 0:
                return val
            loss = cond - mp.log10(abs(val))
        if loss <= extra - 5:
            return val
        extra = float(loss) + digits * 0.0 + 10.0
    return val
