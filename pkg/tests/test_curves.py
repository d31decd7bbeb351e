"""Spectral-curve algebra: discriminant, equilibria, classes, trajectories."""

import cmath
import math

import numpy as np
import pytest

from pivrat.curves import (ClassifyAmbiguous, SpectralCurve, TParametrization,
                           branch_discriminant, classify,
                           degenerate_curve_from_gamma, discriminant_roots,
                           discriminant_triads, equilateral_check,
                           equilibrium_branch, pcoeffs, peval,
                           trace_v_trajectories)


class TestDiscriminant:
    def test_factorization_at_kappa_one(self):
        for y in np.linspace(-3, 3, 13):
            for yy in (complex(y, 0.3), complex(y)):
                want = (yy ** 2 - 4) ** 3 * (yy ** 2 + 12)
                assert abs(branch_discriminant(yy, 1.0) - want) \
                    <= 1e-9 * max(1.0, abs(want))

    def test_positive_root_kappa0(self):
        roots = discriminant_roots(0.0)
        pos = [r.real for r in roots if abs(r.imag) < 1e-9 and r.real > 0]
        closed = (36 + 24 * math.sqrt(3)) ** 0.25
        assert len(pos) == 1
        assert abs(pos[0] - closed) < 1e-12
        assert abs(pos[0] - 2.96773) < 1e-4

    def test_positive_root_kappa3(self):
        roots = discriminant_roots(3.0)
        pos = [r.real for r in roots if abs(r.imag) < 1e-9 and r.real > 0]
        assert abs(pos[0] - 4.19698) < 1e-4

    def test_rotation_symmetry(self):
        for y in (0.7 + 0.2j, 1.5, 2j):
            assert abs(branch_discriminant(1j * y, 0.0)
                       - branch_discriminant(y, 0.0)) < 1e-9 * max(
                1.0, abs(branch_discriminant(y, 0.0)))

    def test_kappa_flip(self):
        for y in (0.7 + 0.2j, 1.5):
            assert abs(branch_discriminant(1j * y, -2.0)
                       - branch_discriminant(y, 2.0)) < 1e-8 * max(
                1.0, abs(branch_discriminant(y, 2.0)))


class TestEquilateral:
    @pytest.mark.parametrize("kappa", [-3.0, -0.5, 0.0, 0.5, 3.0])
    def test_triads_equilateral(self, kappa):
        assert equilateral_check(kappa) < 1e-9

    def test_appendix_identity(self):
        # triangle center alpha and vertex offset beta satisfy
        # alpha^4 + alpha beta^3 = 4 (kappa^2 + 3)
        for kappa in (0.0, 3.0, 0.5):
            tri = discriminant_triads(kappa)["right"]
            center = sum(tri) / 3
            vertex = max(tri, key=lambda r: abs(r.imag) < 1e-9 and 1 or 0)
            real_vertex = next(r for r in tri if abs(r.imag) < 1e-9)
            alpha = center.real
            beta = (real_vertex - center).real
            want = 4 * (kappa ** 2 + 3)
            assert abs(alpha ** 4 + alpha * beta ** 3 - want) < 1e-6 * want

    def test_kappa_minus3_rotated(self):
        t3 = discriminant_triads(3.0)
        tm3 = discriminant_triads(-3.0)
        # B(y; -3) = B(iy; 3): triads rotate by a quarter turn
        rot = sorted((1j * r for r in t3["right"]),
                     key=lambda z: (round(z.real, 6), round(z.imag, 6)))
        up = sorted(tm3["up"], key=lambda z: (round(z.real, 6),
                                              round(z.imag, 6)))
        assert all(abs(a - b) < 1e-8 for a, b in zip(rot, up))


class TestEquilibria:
    def test_gO_far_asymptote(self):
        u = equilibrium_branch("gO", 40.0, 0.3)
        assert abs(u - (-2 / 3 * 40.0)) < 0.2

    def test_gO_at_10(self):
        # direct quartic-solve oracle nearest -20/3
        u = equilibrium_branch("gO", 10.0, 0.0)
        rts = np.roots([1, 80 / 3, 400 / 3, 0, -16 / 3])
        ref = rts[np.argmin(np.abs(rts - (-20 / 3)))]
        assert abs(u - ref) < 1e-9

    def test_gh12_opposite_far_and_rotation(self):
        # U^[2] = -U^[1] holds in the far-field; at finite y the exact
        # relation is the quarter-turn map U^[2](y) = i U^[1](-i y; -kappa)
        y = 30.0 + 6.0j
        u1 = equilibrium_branch("gH1", y, 0.0)
        u2 = equilibrium_branch("gH2", y, 0.0)
        assert abs(u1 + u2) < 1e-3
        y = 2.4 + 0.7j
        u2 = equilibrium_branch("gH2", y, 0.0)
        u1r = equilibrium_branch("gH1", -1j * y, 0.0)
        assert abs(u2 - 1j * u1r) < 1e-9

    def test_oddness(self):
        for br in ("gH3", "gO"):
            y = 3.1 + 0.4j
            assert abs(equilibrium_branch(br, -y, 0.2)
                       + equilibrium_branch(br, y, 0.2)) < 1e-9

    def test_gamma_twist_identity(self):
        # the rescaled combination annihilates the quartic at the mapped
        # parameter -(kappa + 3s)/(1 - s kappa)
        for kappa, s in [(0.0, 1), (0.3, 1), (-0.4, -1)]:
            C = math.sqrt(2.0 / (1 - s * kappa))
            kap2 = -(kappa + 3 * s) / (1 - s * kappa)
            for y in (3.5, 2.0 + 1.5j):
                g = equilibrium_branch("gO", y / C, kappa)
                gt = C * (-y / C - g / 2 - 2 * s / g)
                q = (gt ** 4 + 8 / 3 * y * gt ** 3
                     + 4 / 3 * (y * y + 2 * kap2) * gt ** 2 - 16 / 3)
                assert abs(q) < 1e-7 * max(1.0, abs(gt) ** 4)


class TestDegenerateCurves:
    def test_product_identity(self):
        for (y, kappa) in [(2.0, 0.0), (1.5 + 0.5j, 0.3)]:
            g = equilibrium_branch("gO", y, kappa)
            curve = degenerate_curve_from_gamma(g, y, kappa)
            a, b = curve.roots[0], curve.roots[1]
            assert abs(a * b * g * g - 16) < 1e-9
            curve.check(rel=1e-9)

    def test_E_matches_equilibrium_formula(self):
        y, kappa = 2.0, 0.0
        g = equilibrium_branch("gO", y, kappa)
        curve = degenerate_curve_from_gamma(g, y, kappa)
        E_ref = -2 * g ** 3 - 6 * y * g ** 2 - 4 * (y * y + 2 * kappa) * g
        assert abs(curve.E - E_ref) < 1e-9

    def test_large_y_asymptotes(self):
        y = 60.0
        g = equilibrium_branch("gO", y, 0.0)
        curve = degenerate_curve_from_gamma(g, y, 0.0)
        a, b = curve.roots[0], curve.roots[1]
        big = a if abs(a) > abs(b) else b
        small = b if abs(a) > abs(b) else a
        assert abs(big - (-8 / 3 * y)) < 1.0
        assert abs(small - (-27 / 2 / y ** 3)) < 1e-4


class TestClassify:
    def test_quartet(self):
        roots = np.roots([1, 0, 8 * 0.0, 0, 16][::-1]) * 0 + \
            np.roots([16, 0, 0, 0, 1][::-1])
        assert classify(np.roots([1, 0, 0, 0, 16])) == "1111"

    def test_31(self):
        assert classify([2.0, 2.0 + 1e-9, 2.0 - 1e-9, -1.0]) == "31"

    def test_211(self):
        assert classify([1.0, 1.0 + 1e-9, 2.5, -3.0]) == "211"

    def test_boundary_band(self):
        with pytest.raises(ClassifyAmbiguous):
            classify([1.0, 1.0 + 1e-5, 2.5, -3.0])

    def test_stability_under_perturbation(self):
        base = [1.0, -1.0, 1j, -1j]
        for k in range(4):
            pert = list(base)
            pert[k] += 1e-9
            assert classify(pert) == "1111"


class TestTParametrization:
    def test_biquadratic_residual(self):
        tp = TParametrization(0.3)
        for t in (0.3, -1.2, 2.0 + 0.5j):
            assert abs(tp.biquadratic_residual(t)) < 1e-10

    def test_pole_ordering(self):
        tp = TParametrization(0.4)
        tp_p, tp_m = tp.t_poles()
        a = -math.sqrt(2 * math.sqrt(3) - 3)
        assert tp_m < a < 0 < tp_p

    def test_phi_prime_squared_consistency(self):
        # (d(p^2/q)/dt)^2 (q/p^2) (3q + 4p + 16/q) equals the closed form
        tp = TParametrization(0.2)
        h = 1e-6
        for t in (0.7, -0.9, 1.4):
            y2 = lambda s: tp.p(s) ** 2 / tp.q(s)
            dy2 = (y2(t + h) - y2(t - h)) / (2 * h)
            val = dy2 ** 2 / y2(t) * (3 * tp.q(t) + 4 * tp.p(t)
                                      + 16 / tp.q(t))
            assert abs(val - tp.phi_prime_squared(t)) \
                < 1e-4 * max(1.0, abs(val))


class TestTrajectories:
    def test_local_angles(self):
        # three trajectories from a simple root separated by 2 pi/3
        trajs = trace_v_trajectories(pcoeffs(0.0, 0.0, 0.0))
        seed = 2 * cmath.exp(1j * math.pi / 4)
        mine = [t for t in trajs if abs(t.points[0] - seed) < 1e-9]
        assert len(mine) == 3
        angs = sorted(cmath.phase(t.points[1] - seed) for t in mine)
        gaps = [angs[1] - angs[0], angs[2] - angs[1],
                2 * math.pi - (angs[2] - angs[0])]
        assert all(abs(g - 2 * math.pi / 3) < 1e-3 for g in gaps)

    def test_escape_directions(self):
        trajs = trace_v_trajectories(pcoeffs(0.0, 0.0, 0.0))
        esc = [t for t in trajs if t.terminal == "escape"]
        assert esc
        for t in esc:
            ang = cmath.phase(t.points[-1])
            ok = min(abs(abs(ang) - math.pi / 4),
                     abs(abs(ang) - 3 * math.pi / 4))
            assert ok < 0.05

    def test_circle_domain_through_all_roots(self):
        # at y0 = 0 the four roots pairwise connect around the origin
        trajs = trace_v_trajectories(pcoeffs(0.0, 0.0, 0.0))
        hits = [t for t in trajs if t.terminal == "critical"
                and abs(t.points[0]) < 3 and abs(t.points[-1]) < 3
                and abs(t.points[0] - t.points[-1]) > 1e-3]
        # each root connects to its two neighbors; the four boundary arcs
        # appear twice (once from each endpoint)
        assert len(hits) >= 4
