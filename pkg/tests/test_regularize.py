import math

import numpy as np
import pytest
from scipy import integrate

from step_response import SmoothSignal, UnsupportedRegimeError
from step_response.constitutive import CubicStiffening, ExpSaturating, Linear, SpringDashpotModel
from step_response.oracle import ExpCaseParams, f_plus_quadrature, sigma_plus_closed
from step_response.regularize import SmoothHeaviside, force_experiment, force_general

from conftest import EPS_JP, G3_AT_EPS, G_PLUS, SIGMA_JP, X_JP


def expanded(n, t):
    """The polynomial exactly as written with coefficients d0..d3."""
    d3, d2, d1, d0 = -20 * n**7, 70 * n**6, -84 * n**5, 35 * n**4
    return t**4 * (d3 * t**3 + d2 * t**2 + d1 * t + d0)


def expanded_d1(n, t):
    d3, d2, d1, d0 = -20 * n**7, 70 * n**6, -84 * n**5, 35 * n**4
    return 7 * d3 * t**6 + 6 * d2 * t**5 + 5 * d1 * t**4 + 4 * d0 * t**3


def expanded_d2(n, t):
    d3, d2, d1, d0 = -20 * n**7, 70 * n**6, -84 * n**5, 35 * n**4
    return 42 * d3 * t**5 + 30 * d2 * t**4 + 20 * d1 * t**3 + 12 * d0 * t**2


NS = [1, 3, 10, 64]


class TestSmoothHeaviside:
    def test_outside(self):
        hs = SmoothHeaviside(10)
        assert hs(-1.0) == 0.0 and hs(1.0) == 1.0
        assert hs.d1(-1.0) == hs.d1(1.0) == hs.d2(-1.0) == hs.d2(1.0) == 0.0

    @pytest.mark.parametrize("n", NS)
    def test_midpoint(self, n):
        assert SmoothHeaviside(n)(1 / (2 * n)) == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("n", NS)
    def test_matches_expanded_coefficients(self, n):
        hs = SmoothHeaviside(n)
        assert hs.coefficients == (35 * n**4, -84 * n**5, 70 * n**6, -20 * n**7)
        for t in np.linspace(0, 1 / n, 41):
            assert hs(t) == pytest.approx(expanded(n, t), abs=1e-11)
            assert hs.d1(t) == pytest.approx(expanded_d1(n, t), abs=1e-10 * n)
            assert hs.d2(t) == pytest.approx(expanded_d2(n, t), abs=1e-9 * n * n)

    @pytest.mark.parametrize("n", NS)
    def test_c2_matching(self, n):
        hs = SmoothHeaviside(n)
        for t0 in (0.0, 1 / n):
            assert hs.d1(t0) == 0.0 and hs.d2(t0) == 0.0
            for fn in (hs, hs.d1, hs.d2):
                left, right = fn(math.nextafter(t0, -1)), fn(math.nextafter(t0, 1))
                assert left == pytest.approx(fn(t0), abs=1e-9 * n * n)
                assert right == pytest.approx(fn(t0), abs=1e-9 * n * n)

    @pytest.mark.parametrize("n", NS)
    def test_one_sided_differences_converge(self, n):
        """One-sided differences of H and H' approach the analytic interior values at O(h^2)."""
        hs = SmoothHeaviside(n)
        for t0 in (0.0, 1 / n):
            errs = []
            for k in (1, 2, 4):
                h = 1e-2 / (n * k)
                side = 1.0 if t0 == 0.0 else -1.0
                # second-order one-sided stencil into the transition window
                f = lambda fn: side * (-3 * fn(t0) + 4 * fn(t0 + side * h) - fn(t0 + 2 * side * h)) / (2 * h)
                errs.append(abs(f(hs) - hs.d1(t0)) + abs(f(hs.d1) - hs.d2(t0)))
            assert errs[1] <= errs[0] / 3.5 and errs[2] <= errs[1] / 3.5

    @pytest.mark.parametrize("n", NS)
    def test_bounded_monotone(self, n):
        hs = SmoothHeaviside(n)
        ts = np.linspace(-0.5 / n, 1.5 / n, 1000)
        vals = np.array([hs(t) for t in ts])
        assert np.all((0 <= vals) & (vals <= 1))
        assert all(hs.d1(t) >= 0.0 for t in ts)
        assert np.all(np.diff(vals) >= 0)

    @pytest.mark.parametrize("n", NS)
    def test_integrals(self, n):
        hs = SmoothHeaviside(n)
        i1, _ = integrate.quad(hs.d1, 0, 1 / n, epsabs=1e-13)
        i2, _ = integrate.quad(hs.d2, 0, 1 / n, epsabs=1e-13 * n)
        assert i1 == pytest.approx(1.0, abs=1e-10)
        assert abs(i2) <= 1e-10 * n

    @pytest.mark.parametrize("bad", [0, -3, 2.5, True])
    def test_rejects_bad_n(self, bad):
        with pytest.raises(ValueError):
            SmoothHeaviside(bad)


class TestForceGeneral:
    def test_zero(self):
        z = SmoothSignal.constant(0.0)
        assert force_general(z, z, SmoothHeaviside(8), 0.05) == 0.0

    def test_after_window(self):
        f = SmoothSignal(math.sin, math.cos)
        g = SmoothSignal(math.exp, math.exp)
        assert force_general(f, g, SmoothHeaviside(8), 0.3) == math.cos(0.3)

    def test_inertial_term(self):
        hs = SmoothHeaviside(8)
        c = 2.5
        for t in (0.01, 0.05, 0.1):
            got = force_general(SmoothSignal.constant(0.0), SmoothSignal.constant(c), hs, t)
            assert got == pytest.approx(c * hs.d2(t), rel=1e-15)

    def test_product_rule(self):
        """Against a numerical derivative of f H + g H'."""
        hs = SmoothHeaviside(5)
        f = SmoothSignal(lambda t: t * t, lambda t: 2 * t)
        g = SmoothSignal(lambda t: 1 + t, lambda t: 1.0)
        inner = lambda t: f(t) * hs(t) + g(t) * hs.d1(t)
        for t in (0.03, 0.1, 0.17):
            h = 1e-6
            fd = (inner(t + h) - inner(t - h)) / (2 * h)
            assert force_general(f, g, hs, t) == pytest.approx(fd, rel=1e-6)


class TestForceExperiment:
    def test_before(self, model):
        assert force_experiment(model, EPS_JP, X_JP, SmoothHeaviside(16), -0.1) == 0.0

    def test_long_time(self, model):
        assert force_experiment(model, EPS_JP, X_JP, SmoothHeaviside(16), 5.0) == pytest.approx(
            G3_AT_EPS, rel=1e-12
        )

    def test_after_window_equals_sigma(self, model, params):
        n = 64
        t = 2 / n
        got = force_experiment(model, EPS_JP, X_JP, SmoothHeaviside(n), t)
        assert got == sigma_plus_closed(params, EPS_JP, t)

    def test_inside_window(self, model, params):
        hs = SmoothHeaviside(64)
        t = 0.3 / 64
        expected = sigma_plus_closed(params, EPS_JP, t) * hs(t) + G_PLUS * hs.d2(t)
        assert force_experiment(model, EPS_JP, X_JP, hs, t) == pytest.approx(expected, rel=1e-12)

    def test_unsupported_regime(self, model):
        bad = SpringDashpotModel(ExpSaturating(1.0, 0.1), ExpSaturating(2.0, 11.0), CubicStiffening(3.0, 5.0))
        with pytest.raises(UnsupportedRegimeError):
            force_experiment(bad, EPS_JP, X_JP, SmoothHeaviside(4), 0.1)
        linear = SpringDashpotModel(Linear(10.0), Linear(1 / 11), Linear(3.0))
        with pytest.raises(UnsupportedRegimeError):
            force_experiment(linear, EPS_JP, X_JP, SmoothHeaviside(4), 0.1)

    def test_association_consistency(self, params):
        """The dropped f_plus H_n' term integrates to zero at least linearly in 1/n.

        f_plus is concave with slope sigma0 at 0, so the integral is bounded
        by sigma0 times the integral of t H_n', which is 1/(2n).
        """
        scaled = []
        for n in (4, 16, 64, 256, 1024):
            hs = SmoothHeaviside(n)
            val, _ = integrate.quad(
                lambda t: abs(f_plus_quadrature(params, EPS_JP, t) * hs.d1(t)), 0, 1 / n, epsabs=1e-14
            )
            assert val <= SIGMA_JP / (2 * n) * (1 + 1e-9)
            scaled.append(n * val)
        assert scaled[-1] == pytest.approx(SIGMA_JP / 2, rel=1e-2)
