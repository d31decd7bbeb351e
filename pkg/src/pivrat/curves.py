"""Spectral-curve algebra for the quartic P(z) = z^4 + 4 y0 z^3
+ 4 (y0^2 + 2 kappa) z^2 + 2 E z + 16.

Covers the branch-point discriminant and its equilateral root triads, the
four equilibrium branches of the associated quartic in gamma, degenerate
(class {211}) curves, root-multiplicity classification, the t-plane rational
parametrization, quadratic-differential trajectory tracing, and the boundary
curves of the asymptotic domains.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .numerics.quadrature import BranchedSqrt


class ContinuationError(ArithmeticError):
    pass


class ClassifyAmbiguous(ArithmeticError):
    """Root clustering sits inside the declared boundary band."""


def pcoeffs(y0, kappa, E):
    """Ascending coefficients of P(z); P(0) = 16 exactly."""
    return [16.0 + 0j, 2 * complex(E), 4 * (complex(y0) ** 2 + 2 * kappa),
            4 * complex(y0), 1.0 + 0j]


def peval(z, y0, kappa, E):
    z = np.asarray(z, dtype=complex) if not np.isscalar(z) else complex(z)
    return ((z ** 2) * (z ** 2 + 4 * y0 * z + 4 * (y0 ** 2 + 2 * kappa))
            + 2 * E * z + 16)


@dataclass
class SpectralCurve:
    y0: complex
    kappa: float
    E: complex
    roots: tuple                      # labeled (alpha, beta, gamma, delta)
    class_tag: str                    # "1111", "211", "31"

    def coeffs(self):
        return pcoeffs(self.y0, self.kappa, self.E)

    def check(self, rel=1e-11):
        """Roots must reproduce P to relative tolerance."""
        prod = np.poly(np.array(self.roots))[::-1]     # ascending, monic
        ref = np.array(self.coeffs())
        err = np.max(np.abs(prod - ref)) / max(1.0, np.max(np.abs(ref)))
        if err > rel:
            raise ArithmeticError(f"root/coefficients mismatch {err:g}")
        return err


# ---------------------------------------------------------------------------
# branch-point discriminant

def branch_discriminant(y0, kappa):
    """B(y0; kappa) = y0^8 - 24 (k^2+3) y0^4 - 64 k (k+3)(k-3) y0^2
    - 48 (k^2+3)^2."""
    y0 = complex(y0)
    k = float(kappa)
    y2 = y0 * y0
    y4 = y2 * y2
    return (y4 * y4 - 24 * (k * k + 3) * y4
            - 64 * k * (k + 3) * (k - 3) * y2 - 48 * (k * k + 3) ** 2)


def discriminant_roots(kappa):
    """The eight roots of B(.; kappa), refined by Newton."""
    k = float(kappa)
    coeffs = [-48 * (k * k + 3) ** 2, -64 * k * (k + 3) * (k - 3), 0.0,
              0.0, -24 * (k * k + 3), 0.0, 0.0, 0.0, 1.0]
    rts = np.roots(np.array(coeffs[::-1], dtype=complex))
    # Newton polish on B directly
    out = []
    for r in rts:
        z = complex(r)
        for _ in range(50):
            b = branch_discriminant(z, k)
            db = (8 * z ** 7 - 96 * (k * k + 3) * z ** 3
                  - 128 * k * (k + 3) * (k - 3) * z)
            step = b / db
            z -= step
            if abs(step) < 1e-15 * max(1.0, abs(z)):
                break
        out.append(z)
    return out


def discriminant_triads(kappa):
    """Group the 8 roots of B into the four half-plane triads.

    Returns {"right": [...], "left": [...], "up": [...], "down": [...]},
    each of length 3 (quadrant roots appear in two triads).
    """
    rts = discriminant_roots(kappa)
    scale = max(abs(r) for r in rts)
    def near_axis(v):
        return abs(v) < 1e-9 * scale
    triads = {"right": [], "left": [], "up": [], "down": []}
    for r in rts:
        if not near_axis(r.real):
            (triads["right"] if r.real > 0 else triads["left"]).append(r)
        if not near_axis(r.imag):
            (triads["up"] if r.imag > 0 else triads["down"]).append(r)
    for key, tri in triads.items():
        if len(tri) != 3:
            raise ArithmeticError(
                f"triad {key} has {len(tri)} roots (kappa too close to +-1?)")
    return triads


def equilateral_check(kappa):
    """Max pairwise-distance deviation over the four half-plane triads."""
    triads = discriminant_triads(kappa)
    worst = 0.0
    for tri in triads.values():
        d = [abs(tri[0] - tri[1]), abs(tri[0] - tri[2]), abs(tri[1] - tri[2])]
        worst = max(worst, max(d) - min(d))
    return worst


# ---------------------------------------------------------------------------
# equilibrium branches of Q(gamma, y; kappa) = gamma^4 + (8/3) y gamma^3
#   + (4/3)(y^2 + 2 kappa) gamma^2 - 16/3 = 0

_BRANCH_SEEDS = {
    "gH1": lambda y: 2.0 / y,
    "gH2": lambda y: -2.0 / y,
    "gH3": lambda y: -2.0 * y,
    "gO": lambda y: -2.0 / 3.0 * y,
}


def _gamma_quartic_roots(y, kappa):
    return np.roots(np.array([1.0, 8.0 * y / 3.0,
                              4.0 / 3.0 * (y * y + 2 * kappa), 0.0,
                              -16.0 / 3.0], dtype=complex))


def equilibrium_branch(which, y0, kappa, path=None):
    """The equilibrium root selected by its y -> infinity asymptote,
    continued from far away along a path to y0 that avoids roots of B."""
    y0 = complex(y0)
    if which not in _BRANCH_SEEDS:
        raise ValueError(f"unknown branch {which!r}")
    br = discriminant_roots(kappa)
    far = max(12.0 * (1 + abs(kappa)), 4.0 * abs(y0),
              3.0 * max(abs(b) for b in br))
    if path is None:
        direction = y0 / abs(y0) if abs(y0) > 1e-12 else 1.0
        path = _route_avoiding(far * direction, y0, br,
                               0.08 * max(abs(b) for b in br))
    ystart = path[0]
    cur = None
    seed = _BRANCH_SEEDS[which](ystart)
    rts = _gamma_quartic_roots(ystart, kappa)
    cur = complex(rts[np.argmin(np.abs(rts - seed))])
    if abs(cur - seed) > 0.3 * abs(seed):
        raise ContinuationError("branch seed ambiguous at the far point")
    for a, b in zip(path[:-1], path[1:]):
        cur = _continue_gamma(cur, a, b, kappa)
    return cur


def _gamma_prime(g, y, kappa):
    """Implicit derivative of the quartic branch: -Q_y / Q_gamma."""
    qy = 8.0 / 3.0 * g * g * (g + y)
    qg = 4 * g ** 3 + 8 * y * g * g + 8.0 / 3.0 * (y * y + 2 * kappa) * g
    if qg == 0:
        raise ContinuationError("branch continuation hit a branch point")
    return -qy / qg


def _continue_gamma(cur, ya, yb, kappa, depth=0):
    """Carry a quartic root along a parameter step with an implicit-
    derivative predictor; other branches sweeping nearby force bisection."""
    pred = cur + _gamma_prime(cur, ya, kappa) * (yb - ya)
    rts = _gamma_quartic_roots(yb, kappa)
    dist = np.abs(rts - pred)
    order = np.argsort(dist)
    matched = rts[order[0]]
    sep = min(abs(matched - rts[k]) for k in order[1:])
    if (dist[order[0]] < 0.2 * sep
            and abs(matched - cur) < 2.0 * abs(pred - cur) + 0.2 * sep) \
            or depth >= 48:
        if dist[order[0]] > 0.6 * sep:
            raise ContinuationError("branch continuation hit a branch point")
        return complex(matched)
    mid = 0.5 * (ya + yb)
    cur = _continue_gamma(cur, ya, mid, kappa, depth + 1)
    return _continue_gamma(cur, mid, yb, kappa, depth + 1)


def _route_avoiding(a, b, obstacles, clearance):
    """Polyline from a to b detouring around obstacle points."""
    pts = [complex(a), complex(b)]
    out = [pts[0]]
    seg_a, seg_b = pts
    d = seg_b - seg_a
    L = abs(d)
    if L == 0:
        return pts
    u = d / L
    hits = []
    for p in obstacles:
        t = ((p - seg_a) / u).real
        if 0 < t < L:
            perp = p - (seg_a + t * u)
            if abs(perp) < clearance:
                hits.append((t, p, perp))
    for t, p, perp in sorted(hits):
        # sidestep around p on the side it already leans toward
        n = 1j * u
        side = 1.0 if (perp / n).real >= 0 else -1.0
        bump = side * n * 2.0 * clearance
        out.extend([seg_a + max(t - 2 * clearance, 0) * u + bump,
                    seg_a + min(t + 2 * clearance, L) * u + bump])
    out.append(seg_b)
    return out


def degenerate_curve_from_gamma(gamma, y0, kappa):
    """Class {211} curve built from a double root gamma of the quartic:
    E = -16/gamma + 2 y gamma^2 + gamma^3,  alpha beta = 16/gamma^2,
    alpha + beta = -4 y - 2 gamma."""
    gamma = complex(gamma)
    y0 = complex(y0)
    if gamma == 0:
        raise ValueError("gamma = 0 impossible since P(0) = 16")
    E = -16.0 / gamma + 2 * y0 * gamma ** 2 + gamma ** 3
    s = -4 * y0 - 2 * gamma
    p = 16.0 / gamma ** 2
    disc = cmath.sqrt(s * s - 4 * p)
    alpha, beta = 0.5 * (s + disc), 0.5 * (s - disc)
    return SpectralCurve(y0, float(kappa), E, (alpha, beta, gamma, gamma),
                         "211")


def classify(roots, cluster_tol=1e-6, band=1e-4):
    """Multiplicity class tag from tolerance clustering of four roots.

    cluster_tol is relative to the root-set scale; separations falling in
    [cluster_tol, band] raise ClassifyAmbiguous (boundary-band verdict).
    """
    rts = [complex(r) for r in roots]
    scale = max(max(abs(r) for r in rts), 1e-30)
    groups = []
    used = [False] * len(rts)
    ambiguous = False
    for i, r in enumerate(rts):
        if used[i]:
            continue
        g = [r]
        used[i] = True
        for j in range(i + 1, len(rts)):
            if used[j]:
                continue
            d = abs(rts[j] - r) / scale
            if d < cluster_tol:
                g.append(rts[j])
                used[j] = True
            elif d < band:
                ambiguous = True
        groups.append(g)
    if ambiguous:
        raise ClassifyAmbiguous("root separation inside the boundary band")
    sizes = sorted((len(g) for g in groups), reverse=True)
    tag = "".join(map(str, sizes))
    if tag in ("4", "22"):
        raise ArithmeticError(
            f"class {{{tag}}} is inconsistent with kappa != +-1")
    if tag not in ("1111", "211", "31"):
        raise ArithmeticError(f"unexpected multiplicity pattern {tag}")
    return tag


# ---------------------------------------------------------------------------
# rational parametrization of the gamma-quartic's Riemann surface

@dataclass(frozen=True)
class TParametrization:
    """(p, q, y^2) as rational functions of t for kappa in (-1, 1)."""
    kappa: float

    @property
    def w(self):
        return self.kappa / math.sqrt(1 - self.kappa ** 2)

    def p(self, t):
        a = math.sqrt(1 - self.kappa ** 2)
        return -a * (t - 3 / t) - 4 * self.kappa

    def q(self, t):
        a = math.sqrt(1 - self.kappa ** 2)
        return 2 * a * (t - 1 / t) + 4 * self.kappa

    def y_squared(self, t):
        a = math.sqrt(1 - self.kappa ** 2)
        w = self.w
        return 0.5 * a * (t * t + 4 * w * t - 3) ** 2 \
            / (t * (t * t + 2 * w * t - 1))

    def biquadratic_residual(self, t):
        """(q/2 - 2k)^2 - (p + q)^2 + 4 (1 - k^2); zero on the surface."""
        p, q = self.p(t), self.q(t)
        return (0.5 * q - 2 * self.kappa) ** 2 - (p + q) ** 2 \
            + 4 * (1 - self.kappa ** 2)

    def t_poles(self):
        """t_inf^{+-} = -w +- sqrt(w^2 + 1), the finite nonzero poles."""
        w = self.w
        return -w + math.sqrt(w * w + 1), -w - math.sqrt(w * w + 1)

    def phi_prime_squared(self, t):
        """(1-k^2) (t^4 + 6 t^2 + 8 w t - 3)^3 / (t^4 (t^2 + 2 w t - 1)^4)."""
        w = self.w
        z = t ** 4 + 6 * t ** 2 + 8 * w * t - 3
        return (1 - self.kappa ** 2) * z ** 3 \
            / (t ** 4 * (t * t + 2 * w * t - 1) ** 4)


# ---------------------------------------------------------------------------
# v-trajectories of Q(z) dz^2 = P(z)/(16 z^2) dz^2

@dataclass
class Trajectory:
    points: list
    terminal: str        # "critical", "origin", "escape", "cap"


def _qd_value(z, coeffs):
    pz = 0j
    for c in reversed(coeffs):
        pz = pz * z + c
    return pz / (16.0 * z * z)


def trace_v_trajectories(coeffs, seeds=None, escape=None, arc_cap=50.0,
                         capture=1e-4, step=2e-3):
    """Critical v-trajectories of P(z)/(16 z^2) dz^2 (where Q dz^2 < 0).

    Seeds default to all roots of P; from each simple root three
    trajectories emanate at mutual angles 2 pi/3, from each double root
    four at right angles.  Integration is arclength RK4 with direction
    continuity, terminating at critical points, the origin, an escape
    radius, or the arclength cap.
    """
    rts = np.roots(np.array(coeffs[::-1], dtype=complex))
    scale = max(1.0, float(np.max(np.abs(rts))))
    escape = escape or 10.0 * scale
    groups = []
    used = [False] * len(rts)
    for i, r in enumerate(rts):
        if used[i]:
            continue
        g = [r]
        used[i] = True
        for j in range(i + 1, len(rts)):
            if not used[j] and abs(rts[j] - r) < 1e-6 * scale:
                g.append(rts[j])
                used[j] = True
        groups.append((complex(np.mean(g)), len(g)))
    if seeds is not None:
        groups = [(complex(s), m) for s, m in seeds]
    crit = [g for g, _ in groups]

    def qd(z):
        return _qd_value(z, coeffs)

    out = []
    for p, mult in groups:
        if mult == 1:
            # Q ~ Q'(p)(z - p): directions where arg Q' + 3 theta = pi
            h = 1e-6 * scale
            qp = (qd(p + h) - qd(p - h)) / (2 * h)
            base = (math.pi - cmath.phase(qp)) / 3.0
            dirs = [base + 2 * math.pi * k / 3 for k in range(3)]
            eps = 20 * capture
        elif mult == 2:
            h = 1e-4 * scale
            qpp = (qd(p + h) - 2 * qd(p) + qd(p - h)) / (h * h)
            base = (math.pi - cmath.phase(0.5 * qpp)) / 4.0
            dirs = [base + math.pi * k / 2 for k in range(4)]
            eps = 20 * capture
        else:
            continue
        for th in dirs:
            out.append(_trace_one(qd, p, th, eps, crit, escape, arc_cap,
                                  capture, step * scale))
    return out


def _trace_one(qd, p0, theta, eps, crit, escape, arc_cap, capture, h):
    z = p0 + eps * cmath.exp(1j * theta)
    d = cmath.exp(1j * theta)
    pts = [p0, z]
    s = eps
    terminal = "cap"

    def direction(z, dprev):
        q = qd(z)
        v = 1j / cmath.sqrt(q)
        v /= abs(v)
        return v if (v / dprev).real >= 0 else -v

    while s < arc_cap:
        try:
            k1 = direction(z, d)
            k2 = direction(z + 0.5 * h * k1, k1)
            k3 = direction(z + 0.5 * h * k2, k2)
            k4 = direction(z + h * k3, k3)
        except (ZeroDivisionError, ValueError):
            terminal = "critical"
            break
        dz = (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
        z = z + h * dz
        d = dz / abs(dz)
        s += h
        pts.append(z)
        if abs(z) > escape:
            terminal = "escape"
            break
        if abs(z) < capture:
            terminal = "origin"
            break
        hit = min(crit, key=lambda c: abs(z - c))
        if abs(z - hit) < max(capture, 1.5 * h) and s > 10 * h:
            pts.append(hit)
            terminal = "critical"
            break
    return Trajectory(pts, terminal)


# ---------------------------------------------------------------------------
# boundary curves

@dataclass
class BoundaryCurve:
    kappa: float
    which: str
    polyline: list = field(default_factory=list)
    corners: list = field(default_factory=list)

    def closed(self):
        return abs(self.polyline[0] - self.polyline[-1]) < 1e-9

    def contains(self, y0, shrink=0.0):
        """Point-in-polygon by winding; shrink > 0 tests the eroded region."""
        pts = np.asarray(self.polyline)
        if shrink:
            c = np.mean(pts)
            pts = c + (pts - c) * (1.0 - shrink)
        z = complex(y0)
        angles = np.angle((pts - z) / np.roll(pts - z, 1))
        return abs(np.sum(angles)) > math.pi


_GL64 = np.polynomial.legendre.leggauss(64)


def _gl_nodes(a, b):
    x, w = _GL64
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w


def _re_phi(y0, kappa, gamma):
    """Re int_alpha^gamma sqrt(P)/(4 f) df on the {211} curve with double
    root gamma; independent of the simple root chosen and of the path
    (residues of the integrand are real), defined up to an overall sign
    from the square-root branch."""
    curve = degenerate_curve_from_gamma(gamma, y0, kappa)
    alpha, beta = curve.roots[0], curve.roots[1]
    path = _route_avoiding(alpha, gamma, [0.0],
                           0.08 * max(1.0, abs(gamma), abs(alpha)))
    total = 0j
    prev = None
    for leg, (a, b) in enumerate(zip(path[:-1], path[1:])):
        if leg == 0:
            # substitute z = a + (b - a) s^2 to absorb the sqrt(z - alpha)
            # endpoint singularity
            s, w = _gl_nodes(0.0, 1.0)
            zs = a + (b - a) * s * s
            jac = 2.0 * (b - a) * s * w
        else:
            zs, jac = _gl_nodes(a, b)
        rad = (zs - alpha) * (zs - beta)
        vals = np.sqrt(rad)
        if prev is None:
            prev = vals[0]
        for i in range(len(vals)):
            if abs(vals[i] - prev) > abs(vals[i] + prev):
                vals[i] = -vals[i]
            prev = vals[i]
        total += np.sum((zs - gamma) * vals / (4.0 * zs) * jac)
    return total.real


def real_axis_edge(kappa, lo=1e-3, hi=None):
    """Positive real crossing of the rectangle-domain boundary for
    kappa in (-1, 1), located by the sign change of the quartic
    discriminant along the real-axis Boutroux family."""
    from .boutroux import solve_E_real

    k = float(kappa)
    corner = max(r.real for r in discriminant_roots(k) if abs(r.imag) < 1e-9)
    hi = hi or 0.95 * corner

    def disc_sign(y):
        E = solve_E_real(y, k)
        rts = np.roots(np.array(pcoeffs(y, k, E)[::-1]))
        d = 1.0
        for i in range(4):
            for j in range(i + 1, 4):
                d *= (rts[i] - rts[j]) ** 2
        return d.real

    a, b = lo, hi
    fa = disc_sign(a)
    if fa < 0:
        raise ContinuationError("lo already outside the rectangle domain")
    fb = disc_sign(b)
    if fb > 0:
        raise ContinuationError("hi still inside the rectangle domain")
    for _ in range(60):
        mid = 0.5 * (a + b)
        if disc_sign(mid) > 0:
            a = mid
        else:
            b = mid
        if b - a < 1e-12 * max(1.0, b):
            break
    return 0.5 * (a + b)


def _trace_level(kappa, start, gamma_start, target_roots, initial_dir=None,
                 step=0.02, max_steps=4000, snap=1e-6):
    """Predictor-corrector on the level Re Phi = 0 from `start`, carrying
    the gamma branch along the way; stops on snapping to a target root.

    W is Re of an analytic germ, so its zero level is traced by stepping
    perpendicular to grad W; the overall branch sign of W may flip between
    calls, which cancels in both the Newton corrector and the (memory-
    aligned) tangent direction.
    """
    y = complex(start)
    gamma = complex(gamma_start)
    pts = [y]
    h = 1e-6

    def grad_at(yy, g):
        w0 = _re_phi(yy, kappa, g)
        wx = _re_phi(yy + h, kappa, _continue_gamma(g, yy, yy + h, kappa))
        wy = _re_phi(yy + 1j * h, kappa,
                     _continue_gamma(g, yy, yy + 1j * h, kappa))
        return w0, complex((wx - w0) / h, (wy - w0) / h)

    w0, grad = grad_at(y, gamma)
    tang = 1j * grad / abs(grad)
    if initial_dir is not None:
        if (tang.conjugate() * initial_dir).real < 0:
            tang = -tang
    elif tang.imag < 0:
        tang = -tang
    prev_tang = tang
    for _ in range(max_steps):
        near_root = min(target_roots, key=lambda r: abs(y - r))
        if abs(y - near_root) < max(40 * snap, 0.5 * step) and len(pts) > 3:
            pts.append(complex(near_root))
            return pts
        yp = y + step * prev_tang
        gp = _continue_gamma(gamma, y, yp, kappa)
        for _ in range(10):
            w0, grad = grad_at(yp, gp)
            delta = -w0 * grad / abs(grad) ** 2
            ypn = yp + delta
            gp = _continue_gamma(gp, yp, ypn, kappa)
            yp = ypn
            if abs(delta) < 1e-10:
                break
        gamma = gp
        t = yp - y
        prev_tang = t / abs(t)
        y = yp
        pts.append(y)
        near = min(abs(y - r) for r in target_roots)
        if near < 1.5 * step:
            step = max(near * 0.4, 5 * snap)
    raise ContinuationError("level-set trace did not reach a corner")


def _quadrant_root(kappa):
    return next(r for r in discriminant_roots(kappa)
                if r.real > 1e-9 and r.imag > 1e-9)


def _probe_level_on_chord(kappa, corner, target, gamma_far_branch,
                          t_lo=0.2, t_hi=0.85, samples=25):
    """Find a Re Phi = 0 point on the chord between two branch points by a
    sign scan plus bisection; the gamma branch is continued from far away,
    which is well defined on the chord interior away from the collisions."""
    def W_at(t):
        y = corner + (target - corner) * t
        g = equilibrium_branch(gamma_far_branch, y, kappa)
        return _re_phi(y, kappa, g), y, g
    ts = np.linspace(t_lo, t_hi, samples)
    vals = [W_at(t) for t in ts]
    # the evaluation-to-evaluation sign of W is not anchored, so locate the
    # arc at a minimum of |W| and polish with the sign-invariant corrector
    # delta = -W grad W / |grad W|^2
    i0 = int(np.argmin([abs(v[0]) for v in vals]))
    _, y, g = vals[i0]
    h = 1e-6
    for _ in range(40):
        w0, g = _re_phi(y, kappa, g), g
        gx = _continue_gamma(g, y, y + h, kappa)
        gy = _continue_gamma(g, y, y + 1j * h, kappa)
        grad = complex((_re_phi(y + h, kappa, gx) - w0) / h,
                       (_re_phi(y + 1j * h, kappa, gy) - w0) / h)
        delta = -w0 * grad / abs(grad) ** 2
        g = _continue_gamma(g, y, y + delta, kappa)
        y = y + delta
        if abs(delta) < 1e-11:
            return y, g
    raise ContinuationError("no boundary arc found near the probe chord")


def _mirror_concat(upper_right):
    """Assemble a closed Schwarz-symmetric polyline from its upper-right
    quarter running from the positive real axis to the positive imaginary
    axis."""
    ur = list(upper_right)
    ul = [-z.conjugate() for z in reversed(ur)]
    upper = ur + ul[1:]
    lower = [z.conjugate() for z in reversed(upper)]
    return upper + lower[1:]


_arc_cache = {}


def _raw_arcs(kappa, step=0.02):
    """The four traced quarter-arcs for kappa in (-1,1), cached:
    rect_real: (x_e, 0) -> q1;   rect_imag: (0, y_e) -> q1;
    oka_real:  (c_r, 0) -> q1;   oka_imag:  (0, c_i) -> q1."""
    from .boutroux import real_corner, real_edge_cached
    key = round(float(kappa), 12)
    if key in _arc_cache:
        return _arc_cache[key]
    k = float(kappa)
    q1 = _quadrant_root(k)
    xe = real_edge_cached(k)
    ye = real_edge_cached(-k)
    g_r = equilibrium_branch("gH3", xe, k)
    rect_real = _trace_level(k, xe, g_r, [q1], initial_dir=1j, step=step)
    g_i = equilibrium_branch("gH3", 1j * ye, k)
    rect_imag = _trace_level(k, 1j * ye, g_i, [q1], initial_dir=1.0,
                             step=step)
    cr = real_corner(k)
    ci = real_corner(-k)
    oka_real = _two_way_arc(k, cr, q1, step)
    oka_imag = _two_way_arc(k, complex(1j * ci), q1, step)
    _arc_cache[key] = dict(rect_real=rect_real, rect_imag=rect_imag,
                           oka_real=oka_real, oka_imag=oka_imag, q1=q1,
                           xe=xe, ye=ye, cr=cr, ci=ci)
    return _arc_cache[key]


def _two_way_arc(kappa, corner, q1, step):
    """The dE_gO arc from a corner root to the quadrant root: anchored at a
    point where the level set crosses the chord between them, traced toward
    each endpoint and joined."""
    y_s, g_s = _probe_level_on_chord(kappa, corner, q1, "gO")
    to_q1 = _trace_level(kappa, y_s, g_s, [q1], initial_dir=(q1 - y_s),
                         step=step)
    to_c = _trace_level(kappa, y_s, g_s, [corner],
                        initial_dir=(corner - y_s), step=step)
    return list(reversed(to_c)) + to_q1[1:]


def _conj_path(path):
    return [z.conjugate() for z in path]


def _mconj_path(path):
    return [-z.conjugate() for z in path]


def boundary_curve(kappa, which, step=0.02):
    """Traced boundary curve in the y0-plane.

    which: "dE_gH" (equivalently "dB_square"), "dE_gO", "dB_tri_right",
    "dB_tri_up".  For |kappa| > 1 the curve is the homothetic dilation by
    sqrt((1 +- kappa)/2) of the curve at I^{+-}(kappa).
    """
    k = float(kappa)
    if abs(k) == 1.0:
        raise ValueError("boundary curves undefined at kappa = +-1")
    if abs(k) > 1:
        sgn = 1 if k > 1 else -1
        scale = math.sqrt((1 + sgn * k) / 2)
        inner = boundary_curve(-(k - sgn * 3) / (1 + sgn * k), which, step)
        return BoundaryCurve(k, which,
                             [scale * z for z in inner.polyline],
                             [scale * z for z in inner.corners])
    arcs = _raw_arcs(k, step)
    rr, ri = arcs["rect_real"], arcs["rect_imag"]
    orl, oi = arcs["oka_real"], arcs["oka_imag"]
    if which in ("dE_gH", "dB_square"):
        quarter = rr + list(reversed(ri))[1:]
        poly = _mirror_concat(quarter)
        corners = [r for r in discriminant_roots(k)
                   if abs(r.real) > 1e-9 and abs(r.imag) > 1e-9]
        return BoundaryCurve(k, which, poly, corners)
    if which == "dE_gO":
        quarter = orl + list(reversed(oi))[1:]
        poly = _mirror_concat(quarter)
        return BoundaryCurve(k, which, poly, discriminant_roots(k))
    if which == "dB_tri_right":
        poly = (orl + list(reversed(rr))[1:] + _conj_path(rr)[1:]
                + list(reversed(_conj_path(orl)))[1:])
        corners = [r for r in discriminant_roots(k) if r.real > 1e-9]
        return BoundaryCurve(k, which, poly, corners)
    if which == "dB_tri_up":
        poly = (oi + list(reversed(ri))[1:] + _mconj_path(ri)[1:]
                + list(reversed(_mconj_path(oi)))[1:])
        corners = [r for r in discriminant_roots(k) if r.imag > 1e-9]
        return BoundaryCurve(k, which, poly, corners)
    raise ValueError(f"unknown boundary curve {which!r}")


# ---------------------------------------------------------------------------
# path routing around cut segments

def _seg_point_dist(a, b, p):
    d = b - a
    L2 = (d.conjugate() * d).real
    if L2 == 0:
        return abs(p - a)
    t = max(0.0, min(1.0, ((p - a).conjugate() * d).real / L2))
    return abs(p - (a + t * d))


def _segments_clearance(a1, b1, a2, b2):
    """Distance between two closed segments."""
    def orient(p, q, r):
        return ((q - p).conjugate() * (r - p)).imag
    if (orient(a1, b1, a2) * orient(a1, b1, b2) < 0
            and orient(a2, b2, a1) * orient(a2, b2, b1) < 0):
        return 0.0
    return min(_seg_point_dist(a1, b1, a2), _seg_point_dist(a1, b1, b2),
               _seg_point_dist(a2, b2, a1), _seg_point_dist(a2, b2, b1))


def _trimmed(seg, endpoint, margin):
    """Shrink a segment away from an obstacle endpoint lying close to a
    path endpoint, so departures from (or arrivals near) a cut end are
    allowed without counting as crossings."""
    a, b = seg
    L = abs(a - b)
    cut = min(max(1.2 * margin, 0.05 * L), 0.4 * L)
    if abs(a - endpoint) < 1e-9 * max(1.0, L):
        return (a + cut / L * (b - a), b)
    if abs(b - endpoint) < 1e-9 * max(1.0, L):
        return (a, b + cut / L * (a - b))
    return seg


def segment_crossings(path, seg, skip_near=0.0):
    """Net number of transversal crossings of a polyline with a segment,
    ignoring crossing points within skip_near of the segment's endpoints."""
    p, q = complex(seg[0]), complex(seg[1])
    d = q - p
    total = 0
    for a, b in zip(path[:-1], path[1:]):
        def orient(u, v, w):
            return ((v - u).conjugate() * (w - u)).imag
        o1, o2 = orient(p, q, a), orient(p, q, b)
        o3, o4 = orient(a, b, p), orient(a, b, q)
        if o1 * o2 < 0 and o3 * o4 < 0:
            t = o3 / (o3 - o4)
            x = p + t * d
            if abs(x - p) > skip_near and abs(x - q) > skip_near:
                total += 1 if o1 > 0 else -1
    return total


def route_clear(a, b, seg_obstacles, margin, trim=True):
    """Shortest polyline from a to b keeping `margin` clear of the obstacle
    segments (Dijkstra over endpoint-offset waypoints).  With trim=True,
    obstacles are shrunk near endpoints coinciding with a or b so
    departures from a cut end are allowed; trim=False is strict."""
    import heapq
    a, b = complex(a), complex(b)
    obs = [(complex(p), complex(q)) for p, q in seg_obstacles]

    def eff_obs(u, v):
        if not trim:
            return obs
        out = []
        for seg in obs:
            s = _trimmed(seg, a, margin)
            s = _trimmed(s, b, margin)
            out.append(s)
        return out

    def clear_edge(u, v):
        for p, q in eff_obs(u, v):
            if _segments_clearance(u, v, p, q) < 0.6 * margin:
                return False
        return True

    if clear_edge(a, b):
        return [a, b]
    nodes = [a, b]
    for p, q in obs:
        for e in (p, q):
            for k in range(8):
                w = e + 1.6 * margin * cmath.exp(1j * (math.pi * k / 4 + 0.3))
                if all(_seg_point_dist(pp, qq, w) > 0.55 * margin
                       for pp, qq in obs):
                    nodes.append(w)
    n = len(nodes)
    dist = [math.inf] * n
    prev = [-1] * n
    dist[0] = 0.0
    pq = [(0.0, 0)]
    while pq:
        d, i = heapq.heappop(pq)
        if d > dist[i]:
            continue
        if i == 1:
            break
        for j in range(n):
            if j == i:
                continue
            if not clear_edge(nodes[i], nodes[j]):
                continue
            nd = d + abs(nodes[i] - nodes[j])
            if nd < dist[j]:
                dist[j] = nd
                prev[j] = i
                heapq.heappush(pq, (nd, j))
    if not math.isfinite(dist[1]):
        if margin > 1e-6:
            return route_clear(a, b, seg_obstacles, margin / 3, trim=trim)
        raise ContinuationError("no clear route between path endpoints")
    path = []
    i = 1
    while i != -1:
        path.append(nodes[i])
        i = prev[i]
    return list(reversed(path))
