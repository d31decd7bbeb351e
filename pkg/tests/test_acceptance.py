"""Acceptance suite: one test per criterion, each printing PASS/FAIL.

Criteria with stated runtime bounds are timed; tolerances are pinned to the
values fixed up front, with no later calibration.
"""

import math
import time

import numpy as np
import pytest

from pivrat.exact import (ParameterPoint, gh_poly, go_poly,
                          piv_residual_is_zero, rational_solution,
                          zeros_and_poles)


def _report(num, ok, detail=""):
    print(f"\n[criterion {num:2d}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_01_exact_kernel():
    """Degrees and exact divisions for 0 <= m, n <= 8 in under 60 s."""
    t0 = time.time()
    for m in range(9):
        for n in range(9):
            assert gh_poly(m, n).degree == m * n
            assert go_poly(m, n).degree == m * n + m * (m - 1) + n * (n - 1)
    dt = time.time() - t0
    _report(1, dt < 60, f"degrees ok, recurrences exact, {dt:.1f}s")


def test_criterion_02_piv_residual():
    """Residual identically zero for all families/types, 0 <= m, n <= 5."""
    bad = []
    for fam in ("gH", "gO"):
        for j in (1, 2, 3):
            for m in range(6):
                for n in range(6):
                    sol = rational_solution(ParameterPoint(fam, j, m, n))
                    if not piv_residual_is_zero(sol):
                        bad.append((fam, j, m, n))
    _report(2, not bad, f"216 exact residuals, failures: {bad}")


def test_criterion_03_backlund_lattice():
    """twist(u3(m,n)) = u1(m,n+1) exactly for m,n <= 4; NE seed example."""
    from fractions import Fraction

    from pivrat.exact import ExactPoly, RationalFunc, backlund, backlund_twist
    bad = []
    for fam in ("gH", "gO"):
        for m in range(5):
            for n in range(5):
                p3 = ParameterPoint(fam, 3, m, n)
                u3 = rational_solution(p3).as_ratfunc()
                v, t0, ti = backlund_twist(u3, p3.theta0, p3.theta_inf)
                p1 = ParameterPoint(fam, 1, m, n + 1)
                if (t0, ti) != (p1.theta0, p1.theta_inf) \
                        or v != rational_solution(p1).as_ratfunc():
                    bad.append((fam, m, n))
    seed = RationalFunc(ExactPoly([Fraction(0), Fraction(-2)]),
                        ExactPoly([Fraction(1)]))
    v, t0, ti = backlund(seed, Fraction(1, 2), Fraction(1, 2), "NE")
    ok_seed = v == rational_solution(ParameterPoint("gH", 3, 0, 1)) \
        .as_ratfunc() and (t0, ti) == (1, 1)
    _report(3, not bad and ok_seed, f"twist lattice + NE seed, bad: {bad}")


def test_criterion_04_pole_zero_structure():
    """Residues within 1e-8 of +-1 and |u'| within 1e-7 of 4|theta0|."""
    worst_res, worst_zero = 0.0, 0.0
    cases = [("gH", 1, 8, 8), ("gH", 2, 8, 8), ("gH", 3, 8, 8),
             ("gO", 1, 8, 8), ("gO", 2, 8, 8), ("gO", 3, 8, 8),
             ("gH", 3, 5, 8), ("gO", 1, 8, 3)]
    for fam, j, m, n in cases:
        p = ParameterPoint(fam, j, m, n)
        sol = rational_solution(p)
        zp = zeros_and_poles(sol, digits=30, tol=1e-7)
        t0 = abs(float(p.theta0))
        for (_, res, _) in zp.poles:
            worst_res = max(worst_res, min(abs(res - 1), abs(res + 1)))
        for (_, du, _) in zp.zeros:
            worst_zero = max(worst_zero,
                             abs(abs(du) - 4 * t0) / max(1.0, 4 * t0))
    ok = worst_res < 1e-8 and worst_zero < 1e-7
    _report(4, ok, f"max residue dev {worst_res:.1e}, "
                   f"max zero-slope dev {worst_zero:.1e}")


def test_criterion_05_branch_points():
    """B-root positions, equilateral triads, kappa = 1 factorization."""
    from pivrat.curves import (branch_discriminant, discriminant_roots,
                               equilateral_check)
    pos0 = [r.real for r in discriminant_roots(0.0)
            if abs(r.imag) < 1e-9 and r.real > 0][0]
    pos3 = [r.real for r in discriminant_roots(3.0)
            if abs(r.imag) < 1e-9 and r.real > 0][0]
    ok1 = abs(pos0 - 2.96773) < 1e-4 and abs(pos3 - 4.19698) < 1e-4
    ok2 = all(equilateral_check(k) < 1e-8 for k in (-3, -0.5, 0, 0.5, 3))
    ok3 = True
    for y in np.linspace(-2.5, 2.5, 11):
        for yy in (complex(y), complex(y, 1.1)):
            want = (yy ** 2 - 4) ** 3 * (yy ** 2 + 12)
            if abs(branch_discriminant(yy, 1.0) - want) \
                    > 5e-14 * max(1.0, abs(want)):
                ok3 = False
    _report(5, ok1 and ok2 and ok3,
            f"roots {pos0:.5f}/{pos3:.5f}, triads, factorization")


def test_criterion_06_boutroux():
    """Residuals at E(0;kappa)=0, the asymptote constant, R2 identity,
    and IVT/continuation agreement."""
    from pivrat.boutroux import (boutroux_data, boutroux_residual,
                                 fb_real_slope_constant, real_edge_cached,
                                 reference_frame_square, solve_E,
                                 solve_E_real)
    ok_res = True
    for k in np.arange(-0.9, 0.95, 0.2):
        fa, fb = boutroux_residual(reference_frame_square(float(k)))
        if math.hypot(fa, fb) >= 1e-10:
            ok_res = False
    M = fb_real_slope_constant()
    ok_M = abs(M - 1.25203) < 2e-4
    ok_R2 = True
    for k in (-0.5, 0.0, 0.5):
        edge = real_edge_cached(k)
        for f in (0.3, 0.55, 0.8):
            d = boutroux_data(f * edge, k, domain="B_square")
            if abs(d.R2 - math.pi * (1 - k) / 2) >= 1e-8:
                ok_R2 = False
    ok_ivt = True
    for (y0, k) in [(0.7, 0.0), (0.4, 0.3), (1.2, 0.0)]:
        dom = "B_square" if y0 < real_edge_cached(k) else "B_tri_right"
        e1 = solve_E_real(y0, k)
        e2 = complex(solve_E(y0, k, domain=dom).E)
        if abs(e1 - e2) >= 1e-8:
            ok_ivt = False
    _report(6, ok_res and ok_M and ok_R2 and ok_ivt,
            f"residuals/M={M:.6f}/R2/IVT agreement")


def test_criterion_07_boundary_curves():
    """Axis crossings of the rectangle boundary and dE_gO corner snap."""
    from pivrat.boutroux import real_edge_cached
    from pivrat.curves import boundary_curve, discriminant_roots
    x0 = real_edge_cached(0.0)
    ok1 = abs(x0 - 1.0253) < 2e-3
    x3 = math.sqrt((1 + 3) / 2) * real_edge_cached(0.0)  # dilation image
    bc3 = boundary_curve(3.0, "dB_square")
    x3_traced = min(z.real for z in bc3.polyline
                    if abs(z.imag) < 5e-3 and z.real > 0)
    ok2 = abs(x3_traced - 1.45) < 5e-3 and abs(x3 - x3_traced) < 2e-3
    ok3 = True
    for k in (0.0, 3.0):
        oka = boundary_curve(k, "dE_gO")
        for r in discriminant_roots(k):
            if min(abs(z - r) for z in oka.polyline) >= 1e-6:
                ok3 = False
    _report(7, ok1 and ok2 and ok3,
            f"crossings {x0:.4f}, {x3_traced:.4f}; corners snapped")


def test_criterion_08_approximant_self_consistency():
    """ODE residual < 1e-6 and double periodicity < 1e-8 on zeta grids;
    Jacobi closed forms match theta approximants at y0 = 0, kappa = 0."""
    from pivrat.asymptotics import (jacobi_closed_form, ode_residual,
                                    theta_approximant)
    grid = [0.3 + 0.2j, -0.45, 0.6j, 0.8 - 0.3j]
    combos = [("gH", 3, 6, 5, 0.35, "B_square"),
              ("gO", 3, 6, 6, 0.3 + 0.25j, "B_square"),
              ("gH", 1, 6, 6, 0.4, "B_square"),
              ("gO", 1, 8, 4, 0.45j, "B_square"),
              ("gO", 3, 6, 6, 1.7, "B_tri_right"),
              ("gO", 3, 6, 6, 1.7j, "B_tri_up")]
    ok_ode, ok_per = True, True
    for (f, j, m, n, y0, dom) in combos:
        from pivrat.asymptotics import scaled_params
        yh = y0 * scaled_params(f, j, m, n).hat_factor
        ap = theta_approximant(f, j, m, n, yh, domain=dom)
        for z in grid:
            if ode_residual(ap, z) >= 1e-6:
                ok_ode = False
        Za, Zb = ap.periods()
        for z in grid[:2]:
            v = ap.value(z)
            if abs(ap.value(z + Za) - v) >= 1e-8 * max(1.0, abs(v)) \
                    or abs(ap.value(z + Zb) - v) >= 1e-8 * max(1.0, abs(v)):
                ok_per = False
    # closed-form agreement at y0 = 0 (kappa = 0, type 3, both families)
    ok_cf = True
    for family, (m, n) in (("gH", (6, 5)), ("gO", (4, 3))):
        ap = theta_approximant(family, 3, m, n, 0.0, domain="B_square")
        cf = jacobi_closed_form(family, 3, m, n)
        z = 0.21
        for _ in range(80):
            v = ap.value(z)
            dv = (ap.value(z + 1e-7) - ap.value(z - 1e-7)) / 2e-7
            z -= v / dv
            if abs(v) < 1e-13:
                break
        dv = (ap.value(z + 1e-6) - ap.value(z - 1e-6)) / 2e-6
        if dv.real < 0:
            Za, Zb = ap.periods()
            for shift in (Za / 2, Zb / 2, (Za + Zb) / 2):
                z2 = z + shift
                for _ in range(60):
                    v = ap.value(z2)
                    d2 = (ap.value(z2 + 1e-7) - ap.value(z2 - 1e-7)) / 2e-7
                    z2 -= v / d2
                    if abs(v) < 1e-13:
                        break
                d2 = (ap.value(z2 + 1e-6) - ap.value(z2 - 1e-6)) / 2e-6
                if d2.real > 0:
                    z = z2
                    break
        for w in (0.13, -0.27 + 0.11j, 0.35j):
            if abs(ap.value(w + z) - cf.f(w)) \
                    >= 1e-8 * max(1.0, abs(cf.f(w))):
                ok_cf = False
    _report(8, ok_ode and ok_per and ok_cf,
            "ODE, double periodicity, closed-form alignment")


def test_criterion_09_exterior_convergence():
    """e_m * T_m within a factor 3 of its median along the m = n ladder."""
    from mpmath import mp

    from pivrat.asymptotics import exterior_approx, scaled_params
    t0 = time.time()
    results = {}
    for fam, y0 in (("gH", 2.5), ("gO", 3.0)):
        prods = []
        for m in (4, 6, 8, 10):
            p = ParameterPoint(fam, 3, m, m)
            sol = rational_solution(p)
            rt = math.sqrt(abs(float(p.theta0)))
            x = rt * y0
            with mp.workdps(40):
                ue = complex(sol.eval_mp(mp.mpc(x), mp))
            ua = exterior_approx(fam, 3, m, m, x, check_domain=False)
            e = abs(ue - ua) / rt
            prods.append(e * scaled_params(fam, 3, m, m).T)
        med = sorted(prods)[len(prods) // 2]
        ok = all(med / 3 <= pr <= 3 * med for pr in prods)
        results[fam] = (ok, prods)
    dt = time.time() - t0
    ok = all(v[0] for v in results.values()) and dt < 300
    _report(9, ok, f"e*T ladders {results!r}, {dt:.0f}s")


def _ladder_match(fam, j, ms, window, exact_pts_fn, kind_filter=None):
    from pivrat.asymptotics import (match_lattices, predict_zeros_poles,
                                    scaled_params)
    maxdist, Ts = [], []
    for m in ms:
        lat = predict_zeros_poles(fam, j, m, m, window, grid=(6, 6))
        pred = [p.y0 for p in lat.points
                if kind_filter is None or p.kind == kind_filter
                and (True if kind_filter else True)]
        if kind_filter is not None:
            pred = [p.y0 for p in lat.points if p.kind == kind_filter
                    and p.k == 2]
        exact = exact_pts_fn(m)
        pairs, un_e, un_p = match_lattices(exact, pred)
        assert not un_e and not un_p, (fam, j, m, un_e, un_p)
        maxdist.append(max(d for (_, _, d) in pairs))
        Ts.append(scaled_params(fam, j, m, m).T)
    return maxdist, Ts


def test_criterion_10_interior_matching():
    """One-to-one pole matching in a compact window with T^-2 decay."""
    from pivrat.asymptotics import (exact_lattice, match_lattices,
                                    predict_zeros_poles, scaled_params)
    from pivrat.numerics.roots import poly_roots_exact
    win = (0.08, 0.5, 0.08, 0.5)
    # gO type 3: every exact pole in K matches a predicted pole
    dists, Ts = [], []
    for m in (6, 8, 10):
        lat = predict_zeros_poles("gO", 3, m, m, win, grid=(6, 6))
        pred = [p.y0 for p in lat.points if p.kind.startswith("pole")]
        exact = [y for (y, kind) in exact_lattice("gO", 3, m, m, win)
                 if kind.startswith("pole")]
        pairs, un_e, un_p = match_lattices(exact, pred)
        ok = not un_e and not un_p
        assert ok, f"gO3 ({m},{m}): unmatched {len(un_e)}/{len(un_p)}"
        dists.append(max(d for (_, _, d) in pairs))
        Ts.append(scaled_params("gO", 3, m, m).T)
    ok_decay = True
    for i in (1, 2):
        f = dists[i] / dists[i - 1]
        lo = (Ts[i] / Ts[i - 1]) ** -2
        if not (lo * 0.999 <= f <= 3 * lo):
            ok_decay = False
    # gH type 1: k = 2 poles approximate the rescaled roots of H_{m,m}
    dists_h, Ts_h = [], []
    for m in (6, 8, 10):
        lat = predict_zeros_poles("gH", 1, m, m, win, grid=(6, 6))
        pred = [p.y0 for p in lat.points if p.kind == "pole-" and p.k == 2]
        rt = math.sqrt(m / 2.0)
        roots = [complex(r) / rt for r in poly_roots_exact(gh_poly(m, m),
                                                           digits=25)]
        exact = [r for r in roots if win[0] <= r.real <= win[1]
                 and win[2] <= r.imag <= win[3]]
        pairs, un_e, un_p = match_lattices(exact, pred)
        ok = not un_e and not un_p
        assert ok, f"gH1 ({m},{m}): unmatched {len(un_e)}/{len(un_p)}"
        dists_h.append(max(d for (_, _, d) in pairs))
        Ts_h.append(scaled_params("gH", 1, m, m).T)
    ok_decay_h = True
    for i in (1, 2):
        f = dists_h[i] / dists_h[i - 1]
        lo = (Ts_h[i] / Ts_h[i - 1]) ** -2
        if not (lo * 0.999 <= f <= 3 * lo):
            ok_decay_h = False
    _report(10, ok_decay and ok_decay_h,
            f"gO3 dists {['%.1e' % d for d in dists]}, "
            f"gH1 dists {['%.1e' % d for d in dists_h]}")


def test_criterion_11_origin_exactness():
    """Predicted lattice at y0 = 0 contains the origin with exactly the
    parity-table kind, for every parity, family, and type."""
    from pivrat.asymptotics import predict_zeros_poles
    from pivrat.exact import origin_behavior
    bad = []
    cases = []
    for fam in ("gH", "gO"):
        for j in (1, 2, 3):
            for (m, n) in ((6, 6), (7, 6), (6, 7), (7, 7)):
                cases.append((fam, j, m, n))
    for (fam, j, m, n) in cases:
        lat = predict_zeros_poles(fam, j, m, n, (-0.1, 0.1, -0.1, 0.1),
                                  grid=(4, 4))
        at0 = [p for p in lat.points if abs(p.y0) < 1e-6]
        ob = origin_behavior(ParameterPoint(fam, j, m, n))
        want = ob.kind + ("+" if (ob.deriv_sign if ob.kind == "zero"
                                  else ob.residue) > 0 else "-")
        if len(at0) != 1 or at0[0].kind != want:
            bad.append((fam, j, m, n, want,
                        at0[0].kind if at0 else "missing"))
    _report(11, not bad, f"24 parity/type/family cases, failures: {bad}")


def test_criterion_12_figure_overlays():
    """Predicted overlays match >= 95% of exact points within 0.05."""
    from pivrat.asymptotics import (exact_lattice, predict_zeros_poles,
                                    scaled_params)
    configs = [("gH", 1, 6, 6, ("B_square",)),
               ("gO", 1, 8, 4, ("B_square", "B_tri_right", "B_tri_up")),
               ("gO", 3, 8, 3, ("B_square", "B_tri_right", "B_tri_up")),
               ("gO", 1, -6, -6, ("B_square", "B_tri_right", "B_tri_up"))]
    rows = []
    ok_all = True
    for (fam, j, m, n, domains) in configs:
        sp = scaled_params(fam, j, m, n)
        exact = exact_lattice(fam, j, m, n, (0.02, 3.4, 0.02, 3.4))
        pred = []
        for dom in domains:
            if dom == "B_square":
                win = (0.0, 1.6 * sp.hat_factor, 0.0, 1.6 * sp.hat_factor)
                g = (7, 7)
            elif dom == "B_tri_right":
                win = (0.9 * sp.hat_factor, 3.1 * sp.hat_factor, 0.0,
                       1.3 * sp.hat_factor)
                g = (7, 5)
            else:
                win = (0.0, 1.3 * sp.hat_factor, 0.9 * sp.hat_factor,
                       3.1 * sp.hat_factor)
                g = (5, 7)
            try:
                lat = predict_zeros_poles(fam, j, m, n, win, domain=dom,
                                          grid=g, restrict=True)
                pred.extend(lat.points)
            except Exception as exc:
                print(f"   ({fam},{j},{m},{n}) {dom}: {exc}")
        matched = 0
        for (y, kind) in exact:
            near = [p for p in pred if abs(p.y0 - y) < 0.05
                    and p.kind == kind]
            if near:
                matched += 1
        frac = matched / max(1, len(exact))
        rows.append((fam, j, m, n, len(exact), matched, round(frac, 3)))
        if frac < 0.95:
            ok_all = False
    _report(12, ok_all, f"overlay match rates: {rows}")
