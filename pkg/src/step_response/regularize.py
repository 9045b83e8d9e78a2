"""C2 polynomial regularization of the Heaviside step and the force sequence.

``H_n`` rises from 0 to 1 on ``[0, 1/n]`` as the degree-7 polynomial
``t^4 (d3 t^3 + d2 t^2 + d1 t + d0)`` with ``d3 = -20 n^7``, ``d2 = 70 n^6``,
``d1 = -84 n^5``, ``d0 = 35 n^4``. In the scaled variable ``tau = n t`` this is
``35 tau^4 - 84 tau^5 + 70 tau^6 - 20 tau^7``, whose first two derivatives
factor as ``140 tau^3 (1 - tau)^3`` and ``420 tau^2 (1 - tau)^2 (1 - 2 tau)``;
the factored forms are used to avoid cancellation near ``tau = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constitutive import SpringDashpotModel
from .oracle import ExpCaseParams, sigma_plus_closed
from .signals import SmoothSignal

__all__ = ["SmoothHeaviside", "force_general", "force_experiment"]


@dataclass(frozen=True)
class SmoothHeaviside:
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def width(self) -> float:
        return 1.0 / self.n

    @property
    def coefficients(self) -> tuple[float, float, float, float]:
        """``(d0, d1, d2, d3)``."""
        n = float(self.n)
        return (35 * n**4, -84 * n**5, 70 * n**6, -20 * n**7)

    def _tau(self, t):
        if t <= 0.0:
            return 0.0
        if t > 1.0 / self.n:
            return 1.0
        return min(self.n * t, 1.0)

    def __call__(self, t: float) -> float:
        if t < 0.0:
            return 0.0
        if t > 1.0 / self.n:
            return 1.0
        tau = self._tau(t)
        return tau**4 * (35.0 + tau * (-84.0 + tau * (70.0 - 20.0 * tau)))

    def d1(self, t: float) -> float:
        tau = self._tau(t)
        return self.n * 140.0 * tau**3 * (1.0 - tau) ** 3

    def d2(self, t: float) -> float:
        tau = self._tau(t)
        return self.n**2 * 420.0 * tau**2 * (1.0 - tau) ** 2 * (1.0 - 2.0 * tau)


def force_general(
    f_plus: SmoothSignal, g_plus: SmoothSignal, hs: SmoothHeaviside, t: float
) -> float:
    """``d/dt (f_plus H_n + g_plus H_n')`` expanded by the product rule."""
    H, dH, ddH = hs(t), hs.d1(t), hs.d2(t)
    out = 0.0
    if H != 0.0:
        out += f_plus.d1(t) * H
    if dH != 0.0:
        out += (f_plus(t) + g_plus.d1(t)) * dH
    if ddH != 0.0:
        out += g_plus(t) * ddH
    return out


def force_experiment(
    model: SpringDashpotModel, eps_jp: float, x_jp: float, hs: SmoothHeaviside, t: float
) -> float:
    """Regularized force that should hold the mass at ``x_jp`` after a jump.

    ``sigma_plus(t) H_n(t) + m (x_jp - x_eq) H_n''(t)``, with ``sigma_plus``
    the closed-form relaxation stress. Requires exponential ``g1``, ``g2``
    with a shared exponent.
    """
    if t < 0.0:
        return 0.0
    params = ExpCaseParams.from_model(model)
    return _force_experiment(params, eps_jp, model.m * (x_jp - model.x_eq), hs, t)


def _force_experiment(params, eps_jp, g_plus, hs, t):
    if t < 0.0:
        return 0.0
    out = sigma_plus_closed(params, eps_jp, t) * hs(t)
    ddH = hs.d2(t)
    if ddH != 0.0:
        out += g_plus * ddH
    return out


def experiment_force(model: SpringDashpotModel, eps_jp: float, x_jp: float, hs: SmoothHeaviside):
    """``t -> force_experiment(...)`` with the parameter checks done once."""
    params = ExpCaseParams.from_model(model)
    g_plus = model.m * (x_jp - model.x_eq)
    return lambda t: _force_experiment(params, eps_jp, g_plus, hs, t)
