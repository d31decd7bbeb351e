"""Genus-one Riemann theta series Theta(z) = sum_k exp(H k^2 / 2 + k z).

Requires Re(H) < 0; then the terms decay super-exponentially and the series
is truncated once the dropped tail is below ~1e-16 of the partial sum.
Zeros sit exactly on the lattice K + 2 pi i Z + H Z with K = i pi + H/2.
"""

from __future__ import annotations

import cmath
import math


class ThetaDomainError(ValueError):
    """Theta parameter with nonnegative real part."""


def _kmax(H, z):
    rh = -H.real
    rz = abs(z.real)
    # solve rh k^2/2 - rz k > 37 for the smallest adequate k
    k = (rz + math.sqrt(rz * rz + 74 * rh)) / rh
    return int(math.ceil(max(k, math.sqrt(74 / rh)))) + 2


def riemann_theta(z, H):
    """Theta(z; H) with Re(H) < 0."""
    z, H = complex(z), complex(H)
    if H.real >= 0:
        raise ThetaDomainError(f"Re(H) = {H.real} must be negative")
    km = _kmax(H, z)
    if km > 200000:
        raise ThetaDomainError("theta parameter too close to degeneration")
    total = 1.0 + 0j
    for k in range(1, km + 1):
        q = 0.5 * H * k * k
        total += cmath.exp(q + k * z) + cmath.exp(q - k * z)
    return total


def theta_K(H):
    """The base zero K = i pi + H/2 of Theta(.; H)."""
    return 1j * math.pi + 0.5 * complex(H)


def riemann_theta_dz(z, H):
    """d/dz Theta(z; H), same truncation rule."""
    z, H = complex(z), complex(H)
    if H.real >= 0:
        raise ThetaDomainError(f"Re(H) = {H.real} must be negative")
    km = _kmax(H, z)
    total = 0j
    for k in range(1, km + 1):
        q = 0.5 * H * k * k
        total += k * (cmath.exp(q + k * z) - cmath.exp(q - k * z))
    return total
