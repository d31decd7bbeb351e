"""Complete elliptic integrals and Jacobi elliptic functions.

K(m) uses the arithmetic-geometric mean with principal square roots, which
fixes the branch for complex modulus; sn/sc/sd are built from Jacobi theta
series with the nome derived from the same K, so all branch choices agree.
Conventions follow the parameter (not modulus) form: sn(z|m) with m = k^2.
"""

from __future__ import annotations

import cmath
import math


class EllipticDomainError(ValueError):
    """Modulus on the branch cut [1, infinity)."""


class PoleProximityError(ArithmeticError):
    """Evaluation point within tolerance of a pole of the requested function."""

    def __init__(self, message, residue_sign):
        super().__init__(message)
        self.residue_sign = residue_sign


def _agm(a, b, tol=1e-16, max_iter=60):
    """Principal-branch complex AGM."""
    for _ in range(max_iter):
        if abs(a - b) <= tol * max(abs(a), abs(b)):
            return 0.5 * (a + b)
        a, b = 0.5 * (a + b), cmath.sqrt(a * b)
        # principal AGM: keep |a - b| <= |a + b|
        if abs(a - b) > abs(a + b):
            b = -b
    return 0.5 * (a + b)


def complete_elliptic_K(m):
    """K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta), principal branch."""
    m = complex(m)
    if m.imag == 0 and m.real >= 1:
        raise EllipticDomainError("modulus on the cut [1, oo)")
    return math.pi / (2 * _agm(1.0 + 0j, cmath.sqrt(1 - m)))


def complete_elliptic_Kprime(m):
    """K'(m) = K(1 - m)."""
    return complete_elliptic_K(1 - complex(m))


def _nome(m):
    K = complete_elliptic_K(m)
    Kp = complete_elliptic_Kprime(m)
    q = cmath.exp(-math.pi * Kp / K)
    if abs(q) >= 1:
        raise EllipticDomainError(f"nome |q| = {abs(q)} >= 1")
    return q, K, Kp


def _theta_terms(q, w, kind, tol=1e-17):
    """Jacobi theta function theta_kind(w, q), kind in 1..4."""
    # series in exponentials to stay stable for complex w
    total = 0j
    q4 = q ** 0.25
    nmax = int(20 + abs(w.imag) / max(1e-12, -math.log(abs(q))) * 2) + 8
    if kind == 1:
        for n in range(nmax):
            term = (-1) ** n * q ** (n * (n + 1)) * cmath.sin((2 * n + 1) * w)
            total += term
            if n > 4 and abs(term) < tol * max(1.0, abs(total)):
                break
        return 2 * q4 * total
    if kind == 2:
        for n in range(nmax):
            term = q ** (n * (n + 1)) * cmath.cos((2 * n + 1) * w)
            total += term
            if n > 4 and abs(term) < tol * max(1.0, abs(total)):
                break
        return 2 * q4 * total
    sign = -1 if kind == 4 else 1
    total = 1.0 + 0j
    for n in range(1, nmax):
        term = (sign ** n) * q ** (n * n) * 2 * cmath.cos(2 * n * w)
        total += term
        if n > 4 and abs(term) < tol * max(1.0, abs(total)):
            break
    return total


def jacobi(fn, z, m, pole_tol=1e-12):
    """Jacobi elliptic function sn/sc/sd at complex z with parameter m.

    Evaluated as theta quotients with nome exp(-pi K'(m)/K(m)); raises
    PoleProximityError (carrying the residue sign) when z is within
    tolerance of a pole of the requested function.
    """
    z = complex(z)
    q, K, _ = _nome(m)
    w = math.pi * z / (2 * K)
    t2 = _theta_terms(q, 0.0 + 0j, 2)
    t3 = _theta_terms(q, 0.0 + 0j, 3)
    t4 = _theta_terms(q, 0.0 + 0j, 4)
    th1 = _theta_terms(q, w, 1)
    th2 = _theta_terms(q, w, 2)
    th3 = _theta_terms(q, w, 3)
    th4 = _theta_terms(q, w, 4)
    if fn == "sn":
        num, den = t3 * th1, t2 * th4
    elif fn == "sc":     # sn/cn = theta3 theta1(w) / (theta4 theta2(w))
        num, den = t3 * th1, t4 * th2
    elif fn == "sd":     # sn/dn = theta3^2 theta1(w) / (theta2 theta4 theta3(w))
        num, den = t3 * t3 * th1, t2 * t4 * th3
    else:
        raise ValueError(f"unsupported Jacobi function {fn!r}")
    scale = max(abs(th1), abs(th2), abs(th3), abs(th4), 1e-300)
    if abs(den) < pole_tol * scale * max(abs(t2 * t4), 1e-300):
        # residue sign from the leading Laurent coefficient nearby
        eps = 1e-6 * max(1.0, abs(z))
        v = jacobi(fn, z + eps, m)
        sign = 1 if (v * eps).real > 0 else -1
        raise PoleProximityError(f"{fn} pole near z={z}", sign)
    return num / den


def jacobi_dz(fn, z, m, h=None):
    """Central-difference derivative of a Jacobi function (step ~ 1e-6)."""
    h = h or 1e-6 * max(1.0, abs(z))
    return (jacobi(fn, z + h, m) - jacobi(fn, z - h, m)) / (2 * h)
