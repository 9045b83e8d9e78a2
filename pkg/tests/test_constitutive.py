import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from step_response import (
    ConfigError,
    CubicStiffening,
    Custom,
    DomainError,
    ExpSaturating,
    Linear,
    NumericalError,
    RangeError,
    SpringDashpotModel,
)
from step_response.constitutive import constitutive_from_dict, newton_bisect

from conftest import EPS_JP, G2_INV_AT_EPS, G3_AT_EPS, SQRT3

FAMILIES = [
    Linear(2.5),
    ExpSaturating(SQRT3, 11.0),
    ExpSaturating(SQRT3, 0.1),
    ExpSaturating(1e-8, 4.0),
    CubicStiffening(3.0, 5.0),
    CubicStiffening(3.0, 0.0),
    Custom(math.sinh, math.cosh, -20.0, 20.0, name="sinh"),
]
IDS = ["linear", "exp-g2", "exp-g1", "exp-tiny-a", "cubic", "cubic-linear", "custom-sinh"]


class TestEval:
    def test_exp_zero(self):
        assert ExpSaturating(SQRT3, 11.0)(0.0) == 0.0

    def test_cubic_value(self):
        # direct arithmetic E (1 + gamma s^2) s at s = sqrt(2) - 1
        assert CubicStiffening(3.0, 5.0)(EPS_JP) == pytest.approx(G3_AT_EPS, rel=1e-15)

    def test_linear(self):
        mu1 = 0.1
        assert Linear(1 / mu1)(mu1) == pytest.approx(1.0, rel=1e-15)

    @pytest.mark.parametrize("g", FAMILIES, ids=IDS)
    def test_zero_is_exact(self, g):
        assert g(0.0) == 0.0

    @pytest.mark.parametrize("g", FAMILIES, ids=IDS)
    @pytest.mark.parametrize("s", [-1.3, 0.2, 2.0])
    def test_heaviside_composition(self, g, s):
        for H in (0.0, 1.0):
            assert g(s * H) == g(s) * H

    def test_custom_domain(self):
        g = Custom(math.sinh, math.cosh, -1.0, 1.0)
        with pytest.raises(DomainError):
            g(1.5)
        with pytest.raises(DomainError):
            g.deriv(-2.0)

    def test_nan_rejected(self):
        with pytest.raises(DomainError):
            CubicStiffening(1.0, 1.0)(math.nan)

    def test_overflow_is_domain_error(self):
        with pytest.raises(DomainError):
            ExpSaturating(SQRT3, 11.0)(1e4)


class TestDeriv:
    def test_exp_at_zero(self):
        assert ExpSaturating(0.7, 11.0).deriv(0.0) == pytest.approx(1 / 11.0, rel=1e-15)

    def test_cubic_at_zero(self):
        assert CubicStiffening(3.0, 5.0).deriv(0.0) == 3.0

    @pytest.mark.parametrize("g", FAMILIES, ids=IDS)
    @pytest.mark.parametrize("s", [0.05, 0.4, 1.1])
    def test_matches_central_difference(self, g, s):
        h = 1e-5 * max(1.0, s)
        fd = (g(s + h) - g(s - h)) / (2 * h)
        assert g.deriv(s) == pytest.approx(fd, rel=1e-6)


class TestInverse:
    def test_exp_closed_form(self):
        y = EPS_JP
        s = ExpSaturating(SQRT3, 11.0).inverse(y)
        assert s == pytest.approx(G2_INV_AT_EPS, rel=1e-14)

    def test_exp_closed_form_agrees_with_newton(self):
        g = ExpSaturating(SQRT3, 11.0)
        s = newton_bisect(g, g.deriv, EPS_JP, EPS_JP / g.deriv(0.0))
        assert s == pytest.approx(g.inverse(EPS_JP), rel=1e-12)

    @pytest.mark.parametrize("g", FAMILIES, ids=IDS)
    def test_zero(self, g):
        assert g.inverse(0.0) == 0.0

    def test_linear(self):
        assert Linear(2.0).inverse(3.0) == 1.5

    def test_exp_out_of_range(self):
        g = ExpSaturating(2.0, 5.0)
        with pytest.raises(RangeError):
            g.inverse(-0.1)  # range is (-1/(a c), inf) = (-0.1, inf)

    def test_custom_out_of_range(self):
        g = Custom(math.sinh, math.cosh, -1.0, 1.0)
        with pytest.raises(RangeError):
            g.inverse(2.0)
        with pytest.raises(RangeError):
            g.inverse(-2.0)

    def test_cubic_large_values(self):
        g = CubicStiffening(3.0, 5.0)
        for y in (1e6, -1e6, 1e-9):
            s = g.inverse(y)
            assert abs(g(s) - y) <= 1e-12 * max(1.0, abs(y))

    def test_nonconvergence_raises(self):
        # increasing but jumps over the target value
        def step(x):
            return x if x < 1.0 else x + 1.0

        with pytest.raises(NumericalError):
            newton_bisect(step, lambda x: 1.0, 1.5, 0.0)


@pytest.mark.parametrize("g", FAMILIES, ids=IDS)
@settings(max_examples=1000, deadline=None)
@given(s=st.floats(min_value=-3.0, max_value=3.0, allow_nan=False))
def test_round_trip(g, s):
    assert abs(g.inverse(g(s)) - s) <= 1e-9 * max(1.0, abs(s))


@pytest.mark.parametrize("g", FAMILIES, ids=IDS)
@settings(max_examples=300, deadline=None)
@given(s=st.floats(min_value=-5.0, max_value=5.0, allow_nan=False))
def test_monotone(g, s):
    assert g.deriv(s) > 0.0


def test_linear_limit_of_exp():
    c = 4.0
    g = ExpSaturating(1e-8, c)
    for i in range(-100, 101):
        s = i / 10.0
        assert abs(g(s) - s / c) <= 1e-6


class TestValidation:
    @pytest.mark.parametrize(
        "ctor",
        [
            lambda: Linear(0.0),
            lambda: ExpSaturating(-1.0, 1.0),
            lambda: ExpSaturating(1.0, 0.0),
            lambda: CubicStiffening(0.0, 1.0),
            lambda: CubicStiffening(1.0, -0.5),
            lambda: Custom(lambda s: s + 1.0, lambda s: 1.0, -1.0, 1.0),
            lambda: Custom(lambda s: -s, lambda s: -1.0, -1.0, 1.0),
            lambda: Custom(lambda s: s, lambda s: 1.0, 0.5, 1.0),
        ],
    )
    def test_rejects(self, ctor):
        with pytest.raises(ConfigError):
            ctor()

    def test_gamma_zero_allowed(self):
        assert CubicStiffening(2.0, 0.0)(1.5) == 3.0

    def test_immutable(self):
        g = ExpSaturating(1.0, 2.0)
        with pytest.raises(AttributeError):
            g.a = 3.0


class TestFromDict:
    def test_round_trip(self):
        for g in FAMILIES[:-1]:
            assert constitutive_from_dict(g.to_dict()) == g

    def test_aliases(self):
        g = constitutive_from_dict({"family": "ExpSaturating", "a": 1.7320508, "c": 11.0})
        assert g == ExpSaturating(1.7320508, 11.0)

    @pytest.mark.parametrize(
        "spec",
        [{"a": 1.0}, {"family": "spline"}, {"family": "exp", "a": 1, "c": 2, "b": 3}, {"family": "linear", "k": "x"}],
    )
    def test_bad(self, spec):
        with pytest.raises(ConfigError):
            constitutive_from_dict(spec)

    def test_model(self, model):
        assert SpringDashpotModel.from_dict(model.to_dict()) == model

    def test_model_missing(self):
        with pytest.raises(ConfigError):
            SpringDashpotModel.from_dict({"g1": {"family": "linear", "k": 1}})
