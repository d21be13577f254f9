import math

import numpy as np
import pytest

from radial_extremals import (DomainError, ExtremalSpec, ForbiddenRegion,
                              NoBracket, PowerLaw, PowerLawCurve,
                              TangentialTurningPoint, dphi_dz, eval_v,
                              first_integral_deviation, integrate_phi,
                              parse_weight, psi_from_z, trace_extremal,
                              turning_radius)

# independent 30-digit quadrature of dz/(z sqrt(n^2 z^{2l+2} - 1)) for
# lambda = 1/2, n = 1.3, from the turning radius to z = 2
_HALF_POWER_REFERENCE = 0.8635752013343474


class TestTurningRadius:
    def test_constant_weight(self):
        z = turning_radius(PowerLaw(0.0), 2.0, (0.1, 3.0))
        assert abs(2.0 * z - 1.0) <= 1e-13

    def test_linear_weight(self):
        z = turning_radius(PowerLaw(1.0), 4.0, (0.1, 3.0))
        assert abs(4.0 * z * z - 1.0) <= 1e-13

    def test_power_law_closed_form(self):
        for lam in (0.5, 2.0, 3.0):
            for n in (0.7, 1.9):
                z = turning_radius(PowerLaw(lam), n, (1e-3, 50.0))
                assert z == pytest.approx(n ** (-1.0 / (lam + 1.0)),
                                          rel=1e-12)
                assert abs(n * z ** (lam + 1.0) - 1.0) <= 1e-13

    def test_expression_weight(self):
        w = parse_weight("1/(1+z^2)")
        z = turning_radius(w, 3.0, (0.05, 0.9))
        assert abs(3.0 * eval_v(w, z) * z - 1.0) <= 1e-13

    def test_no_bracket(self):
        with pytest.raises(NoBracket):
            turning_radius(PowerLaw(1.0), 1.0, (2.0, 3.0))

    def test_decreasing_crossing_rejected(self):
        w = parse_weight("z^-2")  # n*v*z = n/z, decreasing
        with pytest.raises(DomainError):
            turning_radius(w, 1.0, (0.5, 2.0))


class TestExtremalSpec:
    def test_negative_n_normalized(self):
        spec = ExtremalSpec(PowerLaw(0.0), -2.0)
        assert spec.n == 2.0 and spec.orientation == -1

    def test_zero_n_rejected(self):
        with pytest.raises(DomainError):
            ExtremalSpec(PowerLaw(0.0), 0.0)

    def test_log_spiral_exponent_rejected(self):
        with pytest.raises(TangentialTurningPoint):
            ExtremalSpec(PowerLaw(-1.0), 1.5)

    def test_steep_decay_rejected(self):
        with pytest.raises(DomainError):
            ExtremalSpec(PowerLaw(-2.0), 1.5)

    def test_auto_bracket_for_expression(self):
        w = parse_weight("1/(1+z^2)")
        spec = ExtremalSpec(w, 3.0)
        assert abs(3.0 * eval_v(w, spec.z_turn) * spec.z_turn - 1.0) <= 1e-13


class TestDphiDz:
    def test_constant_weight_value(self):
        spec = ExtremalSpec(PowerLaw(0.0), 1.0)
        assert dphi_dz(math.sqrt(2.0), spec) == \
            pytest.approx(1.0 / math.sqrt(2.0), rel=1e-14)

    def test_linear_weight_value(self):
        spec = ExtremalSpec(PowerLaw(1.0), 1.0)
        assert dphi_dz(math.sqrt(2.0), spec) == \
            pytest.approx(1.0 / math.sqrt(6.0), rel=1e-14)

    def test_forbidden_just_inside(self):
        spec = ExtremalSpec(PowerLaw(0.5), 1.3)
        with pytest.raises(ForbiddenRegion):
            dphi_dz(spec.z_turn * (1.0 - 1e-9), spec)

    def test_error_flag_exactness(self):
        spec = ExtremalSpec(PowerLaw(0.5), 1.3)
        for z in np.linspace(0.2, 2.5, 197):
            z = float(z)
            inside = spec.n * eval_v(spec.weight, z) * z <= 1.0
            if inside:
                with pytest.raises(ForbiddenRegion):
                    dphi_dz(z, spec)
            else:
                assert dphi_dz(z, spec) > 0.0


class TestIntegratePhi:
    def test_constant_weight_arctan(self):
        spec = ExtremalSpec(PowerLaw(0.0), 1.0)
        got = integrate_phi(spec, 1.0, 2.0, 1e-12)
        assert got == pytest.approx(math.atan(math.sqrt(3.0)), abs=1e-12)

    def test_linear_weight_sixth_pi(self):
        spec = ExtremalSpec(PowerLaw(1.0), 1.0)
        got = integrate_phi(spec, 1.0, math.sqrt(2.0), 1e-12)
        assert got == pytest.approx(math.pi / 6.0, abs=1e-12)

    def test_half_power_against_reference(self):
        spec = ExtremalSpec(PowerLaw(0.5), 1.3)
        got = integrate_phi(spec, spec.z_turn, 2.0, 1e-12)
        assert got == pytest.approx(_HALF_POWER_REFERENCE, abs=1e-12)

    def test_empty_interval(self):
        spec = ExtremalSpec(PowerLaw(0.0), 1.0)
        assert integrate_phi(spec, 1.7, 1.7, 1e-12) == 0.0

    def test_signed_and_monotone_in_upper_limit(self):
        spec = ExtremalSpec(PowerLaw(1.0), 1.0)
        values = [integrate_phi(spec, 1.0, z, 1e-12)
                  for z in (1.0, 1.2, 1.7, 2.5, 4.0)]
        assert values[0] == 0.0
        assert all(b > a for a, b in zip(values, values[1:]))
        assert integrate_phi(spec, 2.5, 1.2, 1e-12) == \
            pytest.approx(values[1] - values[3], abs=1e-12)

    def test_forbidden_region(self):
        spec = ExtremalSpec(PowerLaw(0.0), 1.0)
        with pytest.raises(ForbiddenRegion):
            integrate_phi(spec, 0.5, 2.0, 1e-12)

    def test_tolerance_validated(self):
        spec = ExtremalSpec(PowerLaw(0.0), 1.0)
        with pytest.raises(ValueError):
            integrate_phi(spec, 1.0, 2.0, 1e-2)

    def test_agreement_with_closed_form_within_ten_tol(self):
        tol = 1e-12
        for lam, n in ((0.5, 0.7), (2.0, 1.9), (3.0, 2.5)):
            spec = ExtremalSpec(PowerLaw(lam), n)
            curve = PowerLawCurve(lam, n)
            for psi in (0.3, 0.9, 1.35):
                z = (n * math.cos(psi)) ** (-1.0 / (lam + 1.0))
                got = integrate_phi(spec, spec.z_turn, z, tol)
                assert abs(got - psi / (lam + 1.0)) <= 10.0 * tol
                assert psi_from_z(curve, z) == pytest.approx(psi, rel=1e-12)


class TestTrace:
    def test_straight_line_oracle(self):
        spec = ExtremalSpec(PowerLaw(0.0), 2.0)
        tr = trace_extremal(spec, 2.0, 200)
        ys = [p.z * math.cos(p.phi) for p in tr.samples]
        assert max(abs(y - 0.5) for y in ys) <= 1e-8

    def test_row_count_and_shared_turning_sample(self):
        spec = ExtremalSpec(PowerLaw(1.0), 1.0)
        tr = trace_extremal(spec, 3.0, 200)
        assert len(tr.samples) == 399
        turn = tr.samples[199]
        assert turn.z == tr.z_turn and turn.phi == spec.phi0

    def test_mirror_symmetry(self):
        spec = ExtremalSpec(PowerLaw(2.0), 1.3, phi0=0.4)
        tr = trace_extremal(spec, 2.5, 101)
        for k in range(1, 101):
            left, right = tr.samples[100 - k], tr.samples[100 + k]
            assert left.z == pytest.approx(right.z, abs=1e-8)
            assert (right.phi - spec.phi0) == \
                pytest.approx(spec.phi0 - left.phi, abs=1e-12)

    def test_phi_monotone_and_orientation_flip(self):
        spec = ExtremalSpec(PowerLaw(1.0), 1.0)
        tr = trace_extremal(spec, 2.0, 50)
        phis = [p.phi for p in tr.samples]
        assert all(b > a for a, b in zip(phis, phis[1:]))
        flipped = trace_extremal(ExtremalSpec(PowerLaw(1.0), 1.0,
                                              orientation=-1), 2.0, 50)
        fphis = [p.phi for p in flipped.samples]
        assert all(b < a for a, b in zip(fphis, fphis[1:]))
        assert fphis == [-p for p in phis]

    def test_clairaut_deviation_along_trace(self):
        spec = ExtremalSpec(PowerLaw(1.0), 1.0)
        tr = trace_extremal(spec, 3.0, 200)
        assert max(tr.clairaut_deviation) <= 1e-8

    def test_slope_consistency_with_first_integral(self):
        # t = (dz/dphi)/z from differences satisfies v*z = sqrt(1+t^2)/n;
        # the 1e-6 gate needs a dense grid for the second-order differences
        spec = ExtremalSpec(PowerLaw(2.0), 1.1)
        count = 2400
        tr = trace_extremal(spec, 1.6 * spec.z_turn, count)
        zs = tr.zs[count - 1:]
        phis = tr.phis[count - 1:]
        t = np.gradient(zs, phis, edge_order=2) / zs
        lhs = eval_v(spec.weight, zs) * zs
        rhs = np.sqrt(1.0 + t * t) / spec.n
        keep = (zs > spec.z_turn * 1.15) & (zs < spec.z_turn * 1.55)
        assert np.abs((lhs - rhs) / lhs)[keep].max() <= 1e-6

    def test_uniform_phi_grid(self):
        spec = ExtremalSpec(PowerLaw(1.0), 1.0)
        tr = trace_extremal(spec, 3.0, 60, grid="uniform-phi")
        gaps = np.diff(tr.phis)
        assert gaps.max() - gaps.min() <= 1e-10
        assert max(tr.clairaut_deviation) <= 1e-8
        assert tr.zs[0] == pytest.approx(3.0) and tr.zs[-1] == \
            pytest.approx(3.0)

    def test_domain_validation(self):
        spec = ExtremalSpec(PowerLaw(0.0), 1.0)
        with pytest.raises(DomainError):
            trace_extremal(spec, 0.9, 50)
        with pytest.raises(DomainError):
            trace_extremal(spec, 2.0, 2)

    def test_deviation_helper_at_turning_radius(self):
        spec = ExtremalSpec(PowerLaw(1.0), 2.0)
        assert first_integral_deviation(spec.weight, spec.n,
                                        spec.z_turn) <= 1e-10
