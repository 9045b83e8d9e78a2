"""Jump conditions at ``t = 0+`` for step inputs.

For the strain-driven network the instantaneous stress solves

    g2(sigma0 - g3(eps_jp)) = eps_jp,

i.e. ``sigma0 = g2^{-1}(eps_jp) + g3(eps_jp)``: at the jump only the springs
respond. For the mass system driven into a prescribed motion ``x_plus`` the
force ``F = d/dt (f_plus H + g_plus delta)`` must satisfy
``f_plus(0+) = m x_plus'(0+)`` and ``g_plus(0+) = m (x_plus(0+) - x_eq)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .constitutive import SpringDashpotModel
from .errors import NumericalError
from .signals import SmoothSignal

__all__ = [
    "JumpValues",
    "Lemma1Diagnostics",
    "strain_jump_stress",
    "strain_jump_residual",
    "mass_jump_values",
    "lemma1_check",
]

RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class JumpValues:
    sigma0: float
    f0: float
    g0: float
    eps_jp: float

    def to_dict(self) -> dict:
        return asdict(self)


def strain_jump_residual(model: SpringDashpotModel, sigma0: float, eps_jp: float) -> float:
    """``g2(sigma0 - g3(eps_jp)) - eps_jp``; zero exactly at the jump stress."""
    return model.g2(sigma0 - model.g3(eps_jp)) - eps_jp


def strain_jump_stress(model: SpringDashpotModel, eps_jp: float) -> float:
    """Instantaneous stress after a strain jump of height ``eps_jp``."""
    sigma0 = model.g2.inverse(eps_jp) + model.g3(eps_jp)
    r = strain_jump_residual(model, sigma0, eps_jp)
    if abs(r) > RESIDUAL_TOL * max(1.0, abs(eps_jp)):
        raise NumericalError(f"jump stress residual {r:.3e} exceeds tolerance")
    return sigma0


def mass_jump_values(model: SpringDashpotModel, x_plus: SmoothSignal) -> JumpValues:
    """Jump values of the force ansatz for a prescribed motion ``x_plus``."""
    x0 = x_plus(0.0)
    eps_jp = model.strain(x0)
    return JumpValues(
        sigma0=strain_jump_stress(model, eps_jp),
        f0=model.m * x_plus.d1(0.0),
        g0=model.m * (x0 - model.x_eq),
        eps_jp=eps_jp,
    )


class Lemma1Diagnostics(NamedTuple):
    """Residuals of the three association conditions.

    ``f_at_0`` and ``g_at_0`` are ``|f(0+)|`` and ``|g(0+)|``; ``ode_residual``
    is ``max |h + df/dt|`` over the grid.
    """

    f_at_0: float
    g_at_0: float
    ode_residual: float

    def holds(self, tol: float) -> bool:
        return max(self) <= tol


def lemma1_check(
    f: SmoothSignal, g: SmoothSignal, h: SmoothSignal, grid: Iterable[float]
) -> Lemma1Diagnostics:
    """Check ``h H + d/dt (f H + g delta) ~ 0`` through its pointwise conditions.

    The expression vanishes in the sense of association if and only if
    ``f(0+) = 0``, ``g(0+) = 0`` and ``h + f' = 0`` for ``t >= 0``. The first
    grid point is taken as ``0+``. When ``f`` has no analytic derivative it is
    differentiated by central differences with the local grid spacing
    (one-sided at the ends).
    """
    grid = np.asarray(list(grid), dtype=float)
    if grid.size == 0:
        raise ValueError("empty grid")
    t0 = grid[0]
    if f.has_d1 or grid.size < 2:
        df = np.array([f.d1(t) for t in grid])
    else:
        fv = np.array([f(t) for t in grid])
        df = np.gradient(fv, grid, edge_order=2)
    hv = np.array([h(t) for t in grid])
    return Lemma1Diagnostics(
        f_at_0=abs(f(t0)),
        g_at_0=abs(g(t0)),
        ode_residual=float(np.max(np.abs(hv + df))),
    )
