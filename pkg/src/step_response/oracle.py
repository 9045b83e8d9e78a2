"""Closed-form reference solutions.

With ``g1(s) = (exp(alpha s) - 1) / (alpha mu1)``,
``g2(s) = (exp(alpha s) - 1) / (alpha E2)`` (shared exponent) and an arbitrary
parallel spring ``g3``, the stress after a constant strain jump ``eps`` is

    sigma_plus(t) = log(1 + alpha E2 eps exp(-E2 t / mu1)) / alpha + g3(eps).

``f_plus`` has no elementary antiderivative and is computed by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .constitutive import ConstitutiveFn, ExpSaturating, SpringDashpotModel
from .errors import DomainError, UnsupportedRegimeError

__all__ = [
    "ExpCaseParams",
    "sigma_plus_closed",
    "u_plus_closed",
    "f_plus_quadrature",
    "f_plus_cumulative",
    "g_plus_constant",
    "linear_ssm_step",
]

QUAD_ABS_TOL = 1e-10


@dataclass(frozen=True)
class ExpCaseParams:
    alpha: float
    mu1: float
    E2: float
    g3: ConstitutiveFn
    m: float = 1.0
    x_eq: float = 1.0

    @property
    def rate(self) -> float:
        """Relaxation rate ``E2 / mu1``."""
        return self.E2 / self.mu1

    @classmethod
    def from_model(cls, model: SpringDashpotModel) -> "ExpCaseParams":
        g1, g2 = model.g1, model.g2
        if not (isinstance(g1, ExpSaturating) and isinstance(g2, ExpSaturating)):
            raise UnsupportedRegimeError(
                "closed form needs exponential g1 and g2; use the numerical integrator"
            )
        if not math.isclose(g1.a, g2.a, rel_tol=1e-12):
            raise UnsupportedRegimeError(
                f"closed form needs equal exponents in g1 and g2 (got {g1.a} and {g2.a}); "
                "use the numerical integrator"
            )
        return cls(alpha=g1.a, mu1=g1.c, E2=g2.c, g3=model.g3, m=model.m, x_eq=model.x_eq)


def _jump_arg(params, eps_jp):
    arg = params.alpha * params.E2 * eps_jp
    if not arg > -1.0:
        raise DomainError(f"strain jump {eps_jp!r} outside the range of g2")
    return arg


def u_plus_closed(params: ExpCaseParams, eps_jp: float, t):
    """``alpha (sigma_plus - g3(eps_jp))``."""
    arg = _jump_arg(params, eps_jp)
    return np.log1p(arg * np.exp(-params.rate * np.asarray(t, dtype=float)))


def sigma_plus_closed(params: ExpCaseParams, eps_jp: float, t):
    """Relaxation stress after a constant strain jump; accepts arrays of ``t``."""
    return u_plus_closed(params, eps_jp, t) / params.alpha + params.g3(eps_jp)


def _quad(params, eps_jp, a, b):
    val, _ = integrate.quad(
        lambda s: float(sigma_plus_closed(params, eps_jp, s)),
        a,
        b,
        epsabs=QUAD_ABS_TOL,
        epsrel=1e-13,
        limit=200,
    )
    return val


def f_plus_quadrature(params: ExpCaseParams, eps_jp: float, t: float) -> float:
    """``integral_0^t sigma_plus(s) ds`` by adaptive Gauss-Kronrod quadrature."""
    if t == 0.0:
        return 0.0
    return _quad(params, eps_jp, 0.0, t)


def f_plus_cumulative(params: ExpCaseParams, eps_jp: float, times) -> np.ndarray:
    """``f_plus`` on an increasing grid starting at 0, one integral per interval."""
    times = np.asarray(times, dtype=float)
    pieces = [_quad(params, eps_jp, a, b) for a, b in zip(times, times[1:])]
    return np.concatenate([[0.0], np.cumsum(pieces)])


def g_plus_constant(params: ExpCaseParams, x_jp: float) -> float:
    return params.m * (x_jp - params.x_eq)


def linear_ssm_step(E2: float, E3: float, mu1: float, eps_jp: float, t):
    """Stress response of the linear standard solid to a strain step."""
    t = np.asarray(t, dtype=float)
    return E3 * eps_jp + E2 * eps_jp * np.exp(-E2 * t / mu1)
