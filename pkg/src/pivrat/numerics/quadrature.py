"""Contour quadrature with square-root branch tracking.

Paths are lists of analytic segments; integration uses composite 32-point
Gauss-Legendre panels, refined dyadically until two successive levels agree
within the requested tolerance.  A BranchedSqrt carries a coherent branch of
sqrt(P(z)) along a path by sign continuity, asserting that consecutive
samples never jump by more than a quarter turn of the radicand.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np


class QuadratureError(ArithmeticError):
    """Error estimate failed to drop below tolerance."""


class BranchTrackingError(ArithmeticError):
    """Branch continuation encountered an overly coarse step."""


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)


@dataclass(frozen=True)
class Segment:
    """Analytic arc z(t), t in [0, 1], with derivative dz/dt."""
    z: object
    dz: object

    @classmethod
    def line(cls, a, b):
        a, b = complex(a), complex(b)
        return cls(lambda t: a + (b - a) * t, lambda t: b - a)

    @classmethod
    def arc(cls, center, radius, th0, th1):
        center = complex(center)

        def zf(t):
            return center + radius * cmath.exp(1j * (th0 + (th1 - th0) * t))

        def dzf(t):
            return radius * 1j * (th1 - th0) \
                * cmath.exp(1j * (th0 + (th1 - th0) * t))
        return cls(zf, dzf)


def polyline(points):
    return [Segment.line(a, b) for a, b in zip(points[:-1], points[1:])]


def circle(center, radius, orientation=+1):
    """A full circle as four arcs (counterclockwise for orientation=+1)."""
    ths = np.linspace(0, orientation * 2 * np.pi, 5)
    return [Segment.arc(center, radius, ths[k], ths[k + 1]) for k in range(4)]


def stadium(a, b, dist):
    """Closed loop at distance `dist` around the segment [a, b]."""
    a, b = complex(a), complex(b)
    u = (b - a) / abs(b - a)
    n = 1j * u
    th = cmath.phase(u)
    return [Segment.line(a - n * dist, b - n * dist),
            Segment.arc(b, dist, th - np.pi / 2, th + np.pi / 2),
            Segment.line(b + n * dist, a + n * dist),
            Segment.arc(a, dist, th + np.pi / 2, th + 3 * np.pi / 2)]


class Contour:
    """A piecewise-smooth path; closed if the endpoints coincide."""

    def __init__(self, segments):
        self.segments = list(segments)

    @property
    def start(self):
        return self.segments[0].z(0.0)

    @property
    def end(self):
        return self.segments[-1].z(1.0)

    def is_closed(self, tol=1e-12):
        return abs(self.start - self.end) < tol * max(1.0, abs(self.start))

    def points(self, per_segment=64):
        ts = np.linspace(0, 1, per_segment)
        return [seg.z(t) for seg in self.segments for t in ts]


def _panel_nodes(seg, t0, t1):
    ts = 0.5 * (t1 - t0) * _GL_NODES + 0.5 * (t0 + t1)
    zs = np.array([seg.z(t) for t in ts])
    dzs = np.array([seg.dz(t) for t in ts]) * 0.5 * (t1 - t0)
    return zs, dzs


def _integrate_segment(f, seg, tol, max_depth=12):
    def level(depth):
        panels = 2 ** depth
        total = 0j
        for k in range(panels):
            zs, dzs = _panel_nodes(seg, k / panels, (k + 1) / panels)
            total += np.sum(f(zs) * dzs * _GL_WEIGHTS)
        return total
    prev = level(0)
    for depth in range(1, max_depth + 1):
        cur = level(depth)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur, abs(cur - prev)
        prev = cur
    raise QuadratureError(
        f"segment quadrature stalled with error ~{abs(cur - prev):g}")


def contour_integral(f, contour, tol=1e-12):
    """Integral of an analytic f along the contour, adaptively refined.

    f is vectorized over numpy arrays of complex points.
    """
    if isinstance(contour, Contour):
        segs = contour.segments
    else:
        segs = list(contour)
    total, err = 0j, 0.0
    for seg in segs:
        v, e = _integrate_segment(f, seg, tol / max(1, len(segs)))
        total += v
        err += e
    return total


class BranchedSqrt:
    """sqrt(P(z)) continued along paths by sign coherence.

    P is given by ascending coefficients.  The object carries a base point
    and base value; `along(nodes)` walks an ordered list of points starting
    at the base and returns branch-coherent values, bisecting any step whose
    radicand turns by more than a quarter circle.
    """

    def __init__(self, coeffs, base_point, base_value, max_bisect=60):
        self.coeffs = [complex(c) for c in coeffs]
        self.base_point = complex(base_point)
        self.base_value = complex(base_value)
        p = self._p(self.base_point)
        if abs(self.base_value * self.base_value - p) \
                > 1e-9 * max(1.0, abs(p)):
            raise ValueError("base value does not square to P(base point)")
        self.max_bisect = max_bisect
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self._roots = np.roots(np.array(cs[::-1])) if len(cs) > 1 else \
            np.array([])

    def _p(self, z):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def _step(self, z0, v0, z1, depth=0):
        """Continue from (z0, v0) to z1, bisecting until each sub-step both
        turns the radicand by well under a quarter circle and is short
        relative to the distance to the nearest root (a small radicand
        chord alone cannot rule out a near-full turn around a root)."""
        pa = v0 * v0
        pb = self._p(z1)
        ok = abs(pb - pa) < 0.6 * max(abs(pa), abs(pb))
        if ok and len(self._roots) and abs(z1 - z0) > 1e-13:
            mid = 0.5 * (z0 + z1)
            d = float(np.min(np.abs(self._roots - mid)))
            ok = abs(z1 - z0) <= 0.8 * d
        if ok:
            r = cmath.sqrt(pb)
            return r if abs(r - v0) <= abs(r + v0) else -r
        if depth >= self.max_bisect:
            raise BranchTrackingError(
                "branch step bisection exhausted (path too close to a root?)")
        mid = 0.5 * (z0 + z1)
        vm = self._step(z0, v0, mid, depth + 1)
        return self._step(mid, vm, z1, depth + 1)

    def along(self, nodes):
        """Branch-coherent values at an ordered node list starting anywhere.

        The first node is reached by continuation from the base point.
        """
        vals = []
        z, v = self.base_point, self.base_value
        for w in nodes:
            v = self._step(z, v, complex(w))
            z = complex(w)
            vals.append(v)
        return vals

    def value_at(self, z, via=None):
        """Value at z, continued along `via` waypoints (default straight)."""
        pts = list(via or []) + [z]
        return self.along(pts)[-1]


def contour_integral_branched(g, sqrt_tracker, contour, tol=1e-12,
                              max_depth=10):
    """Integrate g(z, r(z)) with r = branch-tracked sqrt along the contour.

    The branch is carried sequentially through all panel nodes; refinement
    re-walks the whole contour so the branch state stays coherent.
    """
    segs = contour.segments if isinstance(contour, Contour) else list(contour)

    def level(depth):
        total = 0j
        z0 = sqrt_tracker.base_point
        v0 = sqrt_tracker.base_value
        cur = (z0, v0)
        for seg in segs:
            panels = 2 ** depth
            for k in range(panels):
                zs, dzs = _panel_nodes(seg, k / panels, (k + 1) / panels)
                vals = []
                z, v = cur
                for w in zs:
                    v = sqrt_tracker._step(z, v, complex(w))
                    z = complex(w)
                    vals.append(v)
                cur = (z, v)
                total += np.sum(g(zs, np.array(vals)) * dzs * _GL_WEIGHTS)
        # a closed contour must return the branch to its starting value
        start = segs[0].z(0.0)
        end = segs[-1].z(1.0)
        if abs(end - start) < 1e-9 * max(1.0, abs(start)):
            vend = sqrt_tracker._step(cur[0], cur[1], complex(start))
            if abs(vend - v0) > 1e-6 * max(1.0, abs(v0)):
                raise BranchTrackingError(
                    "branch does not close around the contour "
                    "(a branch point is being encircled)")
        return total

    prev = level(1)
    for depth in range(2, max_depth + 1):
        curval = level(depth)
        if abs(curval - prev) <= tol * max(1.0, abs(curval)):
            return curval
        prev = curval
    raise QuadratureError("branched quadrature failed to converge")
