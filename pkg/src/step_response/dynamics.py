"""Post-jump relaxation, force identification and mass-spring-dashpot dynamics.

Three first-order systems are integrated with the Fehlberg 4(5) pair:

* strain-driven relaxation, state ``[sigma]``;
* force identification for a prescribed motion, state ``[f_plus, sigma]``;
* the forced mass, state ``[x, v, sigma]``.

All of them share the explicit stress equation obtained by expanding
``g1(u) + d/dt g2(u) = deps/dt`` with ``u = sigma - g3(eps)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from . import jump
from .constitutive import SpringDashpotModel
from .errors import SingularityError
from .rkf45 import IntegratorConfig, IntegratorStats, OdeSolution, dense_grid, solve
from .signals import SmoothSignal

__all__ = [
    "MassState",
    "Trajectory",
    "ForceResponse",
    "IntegratorConfig",
    "relax_rhs",
    "mass_rhs",
    "integrate_relaxation",
    "integrate_mass",
    "solve_force_for_motion",
]


class MassState(NamedTuple):
    x: float
    v: float
    sigma: float


@dataclass
class Trajectory:
    """Time-sampled ``(t, x, v, sigma, F)`` record.

    ``solution`` keeps the accepted integrator steps for Hermite evaluation
    between samples.
    """

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    sigma: np.ndarray
    F: np.ndarray
    stats: IntegratorStats = field(default_factory=IntegratorStats)
    solution: Optional[OdeSolution] = field(default=None, repr=False)

    COLUMNS = ("t", "x", "v", "sigma", "F")

    def __len__(self):
        return len(self.t)

    def rows(self):
        return zip(self.t, self.x, self.v, self.sigma, self.F)

    def state(self, i: int) -> MassState:
        return MassState(self.x[i], self.v[i], self.sigma[i])


@dataclass
class ForceResponse:
    """Smooth parts ``f_plus`` and ``sigma_plus`` of the identified force."""

    t: np.ndarray
    f: np.ndarray
    sigma: np.ndarray
    g0: float
    stats: IntegratorStats
    solution: OdeSolution = field(repr=False)

    def f_signal(self) -> SmoothSignal:
        s = self.solution
        return SmoothSignal.from_samples(s.t, s.y[:, 0], s.dy[:, 0])

    def sigma_signal(self) -> SmoothSignal:
        s = self.solution
        return SmoothSignal.from_samples(s.t, s.y[:, 1], s.dy[:, 1])


def relax_rhs(model: SpringDashpotModel, sigma: float, eps: float, deps_dt: float) -> float:
    """Stress rate of the network at strain ``eps`` and strain rate ``deps_dt``."""
    u = sigma - model.g3(eps)
    dg2 = model.g2.deriv(u)
    if not (dg2 != 0.0 and math.isfinite(dg2)):
        raise SingularityError(f"g2'({u!r}) = {dg2!r}")
    return (deps_dt - model.g1(u)) / dg2 + model.g3.deriv(eps) * deps_dt


def mass_rhs(model: SpringDashpotModel, state: MassState, F: float) -> MassState:
    """Time derivatives ``(dx/dt, dv/dt, dsigma/dt)`` packed as a ``MassState``."""
    x, v, sigma = state
    eps = (x - model.x_eq) / model.x_eq
    return MassState(
        x=v,
        v=(F - sigma) / model.m,
        sigma=relax_rhs(model, sigma, eps, v / model.x_eq),
    )


def _sample(sol: OdeSolution, cfg: IntegratorConfig, t0: float, t1: float):
    if cfg.dense_output_dt > 0:
        times = dense_grid(t0, t1, cfg.dense_output_dt)
        return times, sol.sample(times)
    return sol.t.copy(), sol.y.copy()


def integrate_relaxation(
    model: SpringDashpotModel,
    eps_plus: SmoothSignal,
    sigma0: Optional[float] = None,
    t_span: tuple[float, float] = (0.0, 0.2),
    cfg: IntegratorConfig = IntegratorConfig(),
) -> Trajectory:
    """Stress response ``sigma_plus(t)`` to the strain history ``eps_plus``.

    ``sigma0`` defaults to the jump stress for ``eps_plus(t_span[0])``. The
    returned trajectory reports the network length as ``x`` and the
    stress as both ``sigma`` and ``F`` (no mass).
    """
    t0, t1 = t_span
    if sigma0 is None:
        sigma0 = jump.strain_jump_stress(model, eps_plus(t0))

    def fun(t, y):
        return (relax_rhs(model, y[0], eps_plus(t), eps_plus.d1(t)),)

    sol = solve(fun, t_span, [sigma0], cfg)
    times, ys = _sample(sol, cfg, t0, t1)
    eps = np.array([eps_plus(s) for s in times])
    deps = np.array([eps_plus.d1(s) for s in times])
    sigma = ys[:, 0]
    return Trajectory(
        t=times,
        x=model.x_eq * (1.0 + eps),
        v=model.x_eq * deps,
        sigma=sigma,
        F=sigma.copy(),
        stats=sol.stats,
        solution=sol,
    )


def integrate_mass(
    model: SpringDashpotModel,
    force: Callable[[float], float],
    init: Optional[MassState] = None,
    t_span: tuple[float, float] = (0.0, 1.0),
    cfg: IntegratorConfig = IntegratorConfig(),
    legs: Optional[Sequence[tuple[float, float]]] = None,
) -> Trajectory:
    """Motion of the mass under the external force ``force(t)``.

    Starts from equilibrium ``(x_eq, 0, 0)`` unless ``init`` is given. See
    :func:`step_response.rkf45.solve` for ``legs``.
    """
    if init is None:
        init = MassState(model.x_eq, 0.0, 0.0)
    t0, t1 = t_span

    def fun(t, y):
        return mass_rhs(model, MassState(y[0], y[1], y[2]), force(t))

    sol = solve(fun, t_span, list(init), cfg, legs=legs)
    times, ys = _sample(sol, cfg, t0, t1)
    return Trajectory(
        t=times,
        x=ys[:, 0],
        v=ys[:, 1],
        sigma=ys[:, 2],
        F=np.array([force(s) for s in times]),
        stats=sol.stats,
        solution=sol,
    )


def solve_force_for_motion(
    model: SpringDashpotModel,
    x_plus: SmoothSignal,
    t_span: tuple[float, float] = (0.0, 0.2),
    cfg: IntegratorConfig = IntegratorConfig(),
) -> ForceResponse:
    """Identify ``f_plus``, ``sigma_plus`` and ``g_plus(0+)`` for the motion
    ``x = x_eq + (x_plus - x_eq) H``.

    Integrates ``f_plus' = m x_plus'' + sigma_plus`` together with the
    relaxation equation, starting from the jump values.
    """
    jv = jump.mass_jump_values(model, x_plus)
    x_eq, m = model.x_eq, model.m

    def fun(t, y):
        eps = (x_plus(t) - x_eq) / x_eq
        deps = x_plus.d1(t) / x_eq
        return (m * x_plus.d2(t) + y[1], relax_rhs(model, y[1], eps, deps))

    sol = solve(fun, t_span, [jv.f0, jv.sigma0], cfg)
    times, ys = _sample(sol, cfg, *t_span)
    return ForceResponse(
        t=times, f=ys[:, 0], sigma=ys[:, 1], g0=jv.g0, stats=sol.stats, solution=sol
    )
