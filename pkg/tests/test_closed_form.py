import math
from fractions import Fraction

import numpy as np
import pytest

from radial_extremals import (DomainError, ExtremalSpec, PowerLaw,
                              PowerLawCurve, algebraic_relation_residual,
                              clairaut_constant, eval_v, integrate_phi,
                              is_algebraic, log_spiral_point, power_law_point,
                              psi_from_z)


def cartesian(pt):
    return np.array([pt.z * math.sin(pt.phi), pt.z * math.cos(pt.phi)])


class TestPowerLawPoint:
    def test_turning_point(self):
        pt = power_law_point(PowerLawCurve(0.0, 2.0), 0.0)
        assert (pt.phi, pt.z) == (0.0, 0.5)

    def test_line_case(self):
        pt = power_law_point(PowerLawCurve(0.0, 2.0), math.pi / 3)
        assert pt.phi == pytest.approx(math.pi / 3, rel=1e-15)
        assert pt.z == pytest.approx(1.0, rel=1e-15)
        assert pt.z * math.cos(pt.phi) == pytest.approx(0.5, rel=1e-14)

    def test_linear_weight_point_and_quadrature_cross_check(self):
        pt = power_law_point(PowerLawCurve(1.0, 1.0), math.pi / 3)
        assert pt.phi == pytest.approx(math.pi / 6, rel=1e-15)
        assert pt.z == pytest.approx(math.sqrt(2.0), rel=1e-15)
        spec = ExtremalSpec(PowerLaw(1.0), 1.0)
        assert integrate_phi(spec, spec.z_turn, pt.z, 1e-12) == \
            pytest.approx(pt.phi, abs=1e-11)

    def test_domain(self):
        with pytest.raises(DomainError):
            power_law_point(PowerLawCurve(1.0, 1.0), math.pi / 2)
        with pytest.raises(DomainError):
            PowerLawCurve(-1.0, 1.0)
        with pytest.raises(DomainError):
            PowerLawCurve(1.0, -2.0)

    def test_line_family_invariant(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            n = float(rng.uniform(0.5, 4.0))
            phi0 = float(rng.uniform(-1.0, 1.0))
            c = PowerLawCurve(0.0, n, phi0)
            for psi in np.linspace(-1.5, 1.5, 61):
                pt = power_law_point(c, float(psi))
                assert abs(pt.z * math.cos(pt.phi - phi0) - 1.0 / n) <= 1e-12

    def test_parameter_relation(self):
        # n^2 z^(2lam+2) = 1/cos(psi)^2 along every curve
        rng = np.random.default_rng(22)
        for lam in (0.0, 0.5, 1.0, 2.0, 3.0):
            n = float(rng.uniform(0.5, 4.0))
            c = PowerLawCurve(lam, n)
            for psi in np.linspace(-1.4, 1.4, 29):
                z = power_law_point(c, float(psi)).z
                lhs = n * n * z ** (2.0 * lam + 2.0) * math.cos(psi) ** 2
                assert abs(lhs - 1.0) <= 1e-12 * lhs + 1e-12

    def test_steep_decay_flips_to_maximum_radius(self):
        c = PowerLawCurve(-2.0, 1.5)
        assert c.z_turn == pytest.approx(1.5, rel=1e-15)
        z_in = power_law_point(c, 1.0).z
        assert z_in < c.z_turn
        assert psi_from_z(c, z_in) == pytest.approx(1.0, rel=1e-12)
        with pytest.raises(DomainError):
            psi_from_z(c, 2.0)   # outside the maximum radius

    def test_clairaut_with_fd_tangents(self):
        # v*z*sin(alpha) = 1/n with alpha from Richardson-extrapolated
        # central-difference tangents
        rng = np.random.default_rng(23)
        h = 1e-4
        for lam in (0.0, 0.5, 1.0, 2.0, 3.0):
            n = float(rng.uniform(0.5, 4.0))
            c = PowerLawCurve(lam, n)
            w = PowerLaw(lam)
            for psi in np.linspace(-1.3, 1.3, 21):
                psi = float(psi)

                def tangent(step):
                    return (cartesian(power_law_point(c, psi + step))
                            - cartesian(power_law_point(c, psi - step))) \
                        / (2.0 * step)

                tan = (4.0 * tangent(h / 2) - tangent(h)) / 3.0
                pos = cartesian(power_law_point(c, psi))
                z = float(np.hypot(*pos))
                sin_alpha = abs(pos[0] * tan[1] - pos[1] * tan[0]) \
                    / (z * float(np.hypot(*tan)))
                got = eval_v(w, z) * z * sin_alpha
                assert abs(got - 1.0 / n) <= 1e-10


class TestPsiFromZ:
    def test_zero_at_turning_radius(self):
        c = PowerLawCurve(1.0, 1.7)
        assert psi_from_z(c, c.z_turn) == 0.0

    def test_constant_weight_value(self):
        assert psi_from_z(PowerLawCurve(0.0, 1.0), 2.0) == \
            pytest.approx(math.atan(math.sqrt(3.0)), rel=1e-14)

    def test_round_trip(self):
        rng = np.random.default_rng(31)
        c = PowerLawCurve(0.5, 1.3)
        for psi in rng.uniform(0.0, 1.5, 100):
            z = power_law_point(c, float(psi)).z
            assert psi_from_z(c, z) == pytest.approx(float(psi), abs=1e-12)

    def test_inside_turning_radius_rejected(self):
        c = PowerLawCurve(1.0, 1.0)
        with pytest.raises(DomainError):
            psi_from_z(c, 0.9)


class TestLogSpiral:
    def test_circle_limit(self):
        for phi in (-2.0, 0.0, 1.0, 7.0):
            assert log_spiral_point(1.0, 2.0, phi).z == 2.0

    def test_growth_rate(self):
        pt = log_spiral_point(math.sqrt(2.0), 1.0, 1.0)
        assert pt.z == pytest.approx(math.e, rel=1e-14)

    def test_first_integral_along_spiral(self):
        n = math.sqrt(2.0)
        t = math.sqrt(n * n - 1.0)
        w = PowerLaw(-1.0)
        for phi in np.linspace(-1.0, 2.0, 31):
            pt = log_spiral_point(n, 1.0, float(phi))
            p = 1.0 / (t * pt.z)   # dtheta/dr on the spiral
            assert abs(clairaut_constant(pt.z, p, w) - 1.0 / n) <= 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            log_spiral_point(0.9, 1.0, 0.0)
        with pytest.raises(DomainError):
            log_spiral_point(1.5, 0.0, 0.0)


class TestIsAlgebraic:
    def test_line(self):
        ok, text = is_algebraic(0)
        assert ok and "straight line" in text

    def test_linear_weight_relation(self):
        ok, text = is_algebraic(1)
        assert ok and "z^2" in text.replace(" ", "")
        c = PowerLawCurve(1.0, 1.3, phi0=0.2)
        for psi in np.linspace(-1.4, 1.4, 100):
            pt = power_law_point(c, float(psi))
            # z^2 cos(2(phi-phi0)) = 1/n restated via the residual
            assert abs(algebraic_relation_residual(c, pt)) <= 1e-10

    def test_half_integer_relation(self):
        ok, text = is_algebraic(Fraction(1, 2))
        assert ok and "3/2" in text
        c = PowerLawCurve(0.5, 0.8)
        for psi in np.linspace(-1.2, 1.2, 50):
            pt = power_law_point(c, float(psi))
            assert abs(algebraic_relation_residual(c, pt)) <= 1e-10

    def test_excluded_and_invalid_inputs(self):
        with pytest.raises(DomainError):
            is_algebraic(-1)
        with pytest.raises(TypeError):
            is_algebraic(0.5)

    def test_string_rational(self):
        ok, text = is_algebraic("2/3")
        assert ok and "5/3" in text
