"""Damped Newton iteration and parameter continuation.

The continuation driver walks a homotopy path, warm-starting each solve from
the previous solution.  The expected failure mode at a domain boundary is a
Jacobian whose norm blows up (not one that degenerates), and that condition
is surfaced as BoundaryReached carrying the last accepted point.
"""

from __future__ import annotations

import numpy as np


class NewtonError(ArithmeticError):
    """Damped Newton failed to converge."""


class BoundaryReached(RuntimeError):
    """Continuation hit the boundary of the solvable region."""

    def __init__(self, message, last_param=None, last_solution=None):
        super().__init__(message)
        self.last_param = last_param
        self.last_solution = last_solution


def _fd_jacobian(F, x, f0, h=1e-7):
    n = len(x)
    J = np.zeros((len(f0), n))
    for j in range(n):
        step = h * max(1.0, abs(x[j]))
        xp = x.copy()
        xp[j] += step
        J[:, j] = (np.asarray(F(xp)) - f0) / step
    return J


def damped_newton(F, x0, tol=1e-12, max_iter=60, jac=None,
                  max_halvings=25):
    """Solve F(x) = 0 with step-halving damping; returns (x, ||F||, J)."""
    x = np.array(x0, dtype=float)
    f = np.asarray(F(x), dtype=float)
    J = None
    for _ in range(max_iter):
        nf = np.linalg.norm(f)
        if nf < tol:
            if J is None:
                J = jac(x) if jac else _fd_jacobian(F, x, f)
            return x, nf, np.asarray(J, dtype=float)
        J = jac(x) if jac else _fd_jacobian(F, x, f)
        try:
            step = np.linalg.solve(J, -f)
        except np.linalg.LinAlgError:
            raise NewtonError("singular Jacobian")
        lam = 1.0
        for _ in range(max_halvings):
            xn = x + lam * step
            fn = np.asarray(F(xn), dtype=float)
            if np.linalg.norm(fn) < nf:
                x, f = xn, fn
                break
            lam *= 0.5
        else:
            raise NewtonError("step halving exhausted without descent")
    if np.linalg.norm(f) < tol:
        return x, np.linalg.norm(f), np.asarray(J, dtype=float)
    raise NewtonError(f"no convergence; ||F|| = {np.linalg.norm(f):g}")


def newton_continuation(F, x0, path, tol=1e-12, jac=None,
                        blowup_factor=1e6):
    """Trace the solution of F(x; p) = 0 along a list of parameters.

    F(x, p) -> residual vector; `path` is an iterable of parameter values.
    Returns the list of (p, x) pairs.  If the Jacobian norm grows beyond
    blowup_factor times its value at the first path point, or Newton stops
    converging, BoundaryReached is raised with the last good point.
    """
    pts = list(path)
    x = np.array(x0, dtype=float)
    out = []
    base_norm = None
    for i, p in enumerate(pts):
        try:
            x, _, J = damped_newton(lambda v: F(v, p), x, tol=tol,
                                    jac=(lambda v: jac(v, p)) if jac else None)
        except NewtonError as exc:
            if out:
                raise BoundaryReached(
                    f"continuation stalled at parameter {p!r}: {exc}",
                    *out[-1]) from exc
            raise
        jn = np.linalg.norm(J)
        if base_norm is None:
            base_norm = max(jn, 1e-300)
        if jn > blowup_factor * base_norm:
            raise BoundaryReached(
                f"Jacobian blow-up at parameter {p!r} (|J| = {jn:g})",
                p, x.copy())
        out.append((p, x.copy()))
    return out
