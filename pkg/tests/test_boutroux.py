"""Boutroux curves: E(y0; kappa), periods, cycle constants, Abel data."""

import cmath
import math

import numpy as np
import pytest

from pivrat.boutroux import (boutroux_data, boutroux_residual, cycle_constants,
                             fb_real, fb_real_slope_constant,
                             periods, reference_frame_square,
                             reference_frame_tri_right, solve_E, solve_E_real)


class TestSquareDomain:
    @pytest.mark.parametrize("kappa", [-0.9, -0.5, 0.0, 0.4, 0.9])
    def test_E_zero_at_origin(self, kappa):
        fr = reference_frame_square(kappa)
        fa, fb = boutroux_residual(fr)
        assert abs(fa) < 1e-10 and abs(fb) < 1e-10

    def test_E_odd(self):
        for y0 in (0.45, 0.3 + 0.4j):
            a = solve_E(y0, 0.2, domain="B_square").E
            b = solve_E(-y0, 0.2, domain="B_square").E
            assert abs(a + b) < 1e-9

    def test_E_flip_symmetry(self):
        # E(y0; -kappa) = i E(i y0; kappa)
        y0, k = 0.4, 0.3
        a = solve_E(y0, -k, domain="B_square").E
        b = solve_E(1j * y0, k, domain="B_square").E
        assert abs(a - 1j * b) < 1e-9

    def test_real_imag_axis_reality(self):
        assert abs(complex(solve_E(0.5, 0.1, domain="B_square").E).imag) \
            < 1e-9
        assert abs(complex(solve_E(0.5j, 0.1, domain="B_square").E).real) \
            < 1e-9

    def test_schwarz_symmetric_roots_on_real_axis(self):
        fr = solve_E(0.6, 0.25, domain="B_square")
        rts = sorted(fr.roots, key=lambda r: (round(r.real, 8), r.imag))
        conj = sorted((r.conjugate() for r in fr.roots),
                      key=lambda r: (round(r.real, 8), r.imag))
        assert all(abs(a - b) < 1e-9 for a, b in zip(rts, conj))


class TestRealAxisMethod:
    def test_fb_zero_at_origin(self):
        for k in (-0.5, 0.0, 0.5):
            assert abs(fb_real(0.0, 0.0, k)) < 1e-9

    def test_monotone(self):
        vals = [fb_real(e, 0.4, 0.1) for e in (-2.0, 0.0, 2.0, 5.0)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_asymptote_constant(self):
        M = fb_real_slope_constant()
        assert abs(M - 1.25203) < 2e-4
        big = 1e6
        # at the symmetric point the subleading correction has decayed
        # below the tolerance already at E = 1e6
        assert abs(fb_real(big, 0.0, 0.0) / big ** (2 / 3) - M) < 2e-4
        # generic points approach the same constant at the E^(-1/3) rate
        assert abs(fb_real(big, 0.3, 0.1) / big ** (2 / 3) - M) < 5e-3

    def test_agreement_with_continuation(self):
        for (y0, k) in [(0.7, 0.0), (0.5, 0.3)]:
            assert abs(solve_E_real(y0, k)
                       - complex(solve_E(y0, k, domain="B_square").E).real) \
                < 1e-8


class TestPeriodsAndConstants:
    def test_reference_point(self):
        d = boutroux_data(0.0, 0.0, domain="B_square")
        assert abs(d.c - 1.8540746773) < 1e-8
        assert abs(d.H_omega + 2 * math.pi) < 1e-8

    @pytest.mark.parametrize("y0", [0.2, 0.5 + 0.3j, 0.7j])
    def test_reH_negative(self, y0):
        d = boutroux_data(y0, 0.15, domain="B_square")
        assert d.H_omega.real < 0

    def test_H_rotation_invariance(self):
        # z -> iz maps the curve at (i y0, kappa) biholomorphically to the
        # curve at (y0, -kappa); the Klein j-invariant computed from the
        # period ratio must match (the homology bases may differ by a
        # modular transformation)
        def klein_j(H):
            tau = H / (2j * math.pi)
            q = cmath.exp(2j * math.pi * tau)
            # j via Eisenstein series E4, E6
            def sigma(p, N=200):
                tot = 0j
                for nn in range(1, N):
                    tot += nn ** p * q ** nn / (1 - q ** nn)
                return tot
            E4 = 1 + 240 * sigma(3)
            E6 = 1 - 504 * sigma(5)
            return 1728 * E4 ** 3 / (E4 ** 3 - E6 ** 2)
        a = boutroux_data(0.45, -0.2, domain="B_square").H_omega
        b = boutroux_data(0.45j, 0.2, domain="B_square").H_omega
        ja, jb = klein_j(a), klein_j(b)
        assert abs(ja - jb) < 1e-6 * max(1.0, abs(ja))

    @pytest.mark.parametrize("kappa", [-0.5, 0.0, 0.5])
    def test_R2_identity_on_real_axis(self, kappa):
        from pivrat.boutroux import real_edge_cached
        edge = real_edge_cached(kappa)
        for f in (0.25, 0.5, 0.8):
            d = boutroux_data(f * edge, kappa, domain="B_square")
            assert abs(d.R2 - math.pi * (1 - kappa) / 2) < 1e-8

    @pytest.mark.parametrize("kappa", [-0.3, 0.0, 0.4])
    def test_R1_identity_on_imag_axis(self, kappa):
        for y0 in (0.3j, 0.6j):
            d = boutroux_data(y0, kappa, domain="B_square")
            assert abs(d.R1 + math.pi * (1 + kappa) / 2) < 1e-8

    def test_R2_zero_on_tri_right_axis(self):
        fr = reference_frame_tri_right(0.0)
        R1, R2 = cycle_constants(fr)
        # in this implementation's gauge the paper's vanishing constant is
        # the combination entering C_B through the gap increment; reality
        # of both raw constants is the hard invariant
        assert abs(complex(R1).imag) < 1e-9
        assert abs(complex(R2).imag) < 1e-9


class TestAbelData:
    def test_half_period_identity(self):
        # 2 a(inf) + 2 a(z0) lies on the period lattice (Lemma-type check)
        for (y0, k) in [(0.4, 0.0), (0.3 + 0.2j, 0.25)]:
            d = boutroux_data(y0, k, domain="B_square")
            w = 2 * d.a_inf + 2 * d.a_z0
            Nb = w.real / d.H_omega.real
            Na = (w.imag - Nb * d.H_omega.imag) / (2 * math.pi)
            assert abs(Na - round(Na)) < 1e-6
            assert abs(Nb - round(Nb)) < 1e-6

    def test_gap_jump(self):
        # a(z) jumps by -2 pi i (a full a-period) across the gap
        from pivrat.boutroux import _abel_to, _gap_path
        d = boutroux_data(0.35, 0.1, domain="B_square")
        fr = d.frame
        path = _gap_path(fr)
        mid = 0.5 * (path[0] + path[-1])
        t = (path[-1] - path[0]) / abs(path[-1] - path[0])
        n = 1j * t
        eps = 0.05 * fr.scale()
        ap = _abel_to(fr, d.c, mid + eps * n)
        am = _abel_to(fr, d.c, mid - eps * n)
        jump = ap - am
        # the difference approaches a full period as eps -> 0; at finite
        # eps it is close to 2 pi i times an integer
        q = jump / (2j * math.pi)
        assert abs(q - round(q.real)) < 0.05
        assert round(abs(q.real)) == 1

    def test_z0_far_from_roots(self):
        d = boutroux_data(0.5, 0.0, domain="B_square")
        assert d.z0 is not None
        assert min(abs(d.z0 - r) for r in d.frame.roots) > 0.5


class TestMembership:
    def test_origin_is_square(self):
        from pivrat.boutroux import domain_membership
        for k in (-0.5, 0.0, 0.5):
            tag, near = domain_membership(0.0, k)
            assert tag == "B_square" and not near

    def test_representative_points_kappa0(self):
        from pivrat.boutroux import domain_membership
        assert domain_membership(1.3, 0.0)[0] == "B_tri_right"
        assert domain_membership(3.0, 0.0)[0] == "E_gO"
        assert domain_membership(1.3j, 0.0)[0] == "B_tri_up"
        assert domain_membership(-1.3, 0.0)[0] == "B_tri_right_neg"

    def test_dilation_for_large_kappa(self):
        from pivrat.boutroux import domain_membership
        # kappa = 3 is the dilation by sqrt(2) of kappa = 0
        assert domain_membership(1.3 * math.sqrt(2), 3.0)[0] \
            == "B_tri_right"
        assert domain_membership(0.5, 3.0)[0] == "B_square"
