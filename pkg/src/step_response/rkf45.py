"""Adaptive Runge-Kutta-Fehlberg 4(5) integrator.

Classical Fehlberg pair: the 4th-order solution is propagated and the
difference to the embedded 5th-order solution is the local error estimate.
Step sizes follow a PI controller on the weighted RMS error norm with
weights ``abs_tol + rel_tol * |y|``. Accepted steps are stored with their
derivatives so the solution can be evaluated anywhere by cubic Hermite
interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConfigError, DomainError, StiffnessError
from .signals import hermite, hermite_d1

# Butcher tableau
C = (0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2)
A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40),
)
B4 = (25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0)
B5 = (16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55)
E = tuple(b5 - b4 for b4, b5 in zip(B4, B5))

SAFETY = 0.9
FAC_MIN = 0.2
FAC_MAX = 5.0
# PI exponents for an error estimate of order 5
PI_ALPHA = 0.7 / 5
PI_BETA = 0.4 / 5

RHS = Callable[[float, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    h_init: float = 1e-5
    h_min: float = 1e-14
    h_max: float = 1e-2
    dense_output_dt: float = 1e-3

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ConfigError("integrator tolerances must be positive")
        if not (0 < self.h_min <= self.h_init <= self.h_max):
            raise ConfigError("integrator step sizes must satisfy 0 < h_min <= h_init <= h_max")
        if not self.dense_output_dt >= 0:
            raise ConfigError("dense_output_dt must be non-negative (0 disables resampling)")

    def replace(self, **changes) -> "IntegratorConfig":
        from dataclasses import replace

        return replace(self, **changes)


@dataclass
class IntegratorStats:
    accepted: int = 0
    rejected: int = 0
    nfev: int = 0
    max_error: float = 0.0

    def merge(self, other: "IntegratorStats") -> None:
        self.accepted += other.accepted
        self.rejected += other.rejected
        self.nfev += other.nfev
        self.max_error = max(self.max_error, other.max_error)


@dataclass
class OdeSolution:
    """Accepted steps ``t``, states ``y`` and derivatives ``dy``."""

    t: np.ndarray
    y: np.ndarray
    dy: np.ndarray
    stats: IntegratorStats = field(default_factory=IntegratorStats)

    def _locate(self, s):
        t = self.t
        if not (t[0] <= s <= t[-1]):
            raise ValueError(f"t={s!r} outside solution interval [{t[0]}, {t[-1]}]")
        if len(t) == 1:
            return 0, 0.0, 0.0
        i = min(max(int(np.searchsorted(t, s, side="right")) - 1, 0), len(t) - 2)
        h = t[i + 1] - t[i]
        return i, h, (s - t[i]) / h

    def __call__(self, s: float) -> np.ndarray:
        i, h, u = self._locate(s)
        if h == 0.0:
            return self.y[i].copy()
        return hermite(u, h, self.y[i], self.y[i + 1], self.dy[i], self.dy[i + 1])

    def derivative(self, s: float) -> np.ndarray:
        i, h, u = self._locate(s)
        if h == 0.0:
            return self.dy[i].copy()
        return hermite_d1(u, h, self.y[i], self.y[i + 1], self.dy[i], self.dy[i + 1])

    def sample(self, times) -> np.ndarray:
        return np.array([self(s) for s in times])


def dense_grid(t0: float, t1: float, dt: float) -> np.ndarray:
    """``t0, t0 + dt, ...`` up to and including ``t1``."""
    if dt <= 0:
        return np.array([t0, t1])
    n = int(math.floor((t1 - t0) / dt * (1 + 1e-12)))
    grid = t0 + dt * np.arange(n + 1)
    if t1 - grid[-1] > 1e-9 * dt:
        grid = np.append(grid, t1)
    else:
        grid[-1] = t1
    return grid


def _error_norm(err, y0, y1, cfg):
    scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y0), np.abs(y1))
    return math.sqrt(float(np.mean((err / scale) ** 2)))


def step(fun: RHS, t: float, y: np.ndarray, k1: np.ndarray, h: float):
    """One Fehlberg step; returns ``(y4, y5 - y4)``."""
    k = [k1]
    for i in range(1, 6):
        yi = y + h * sum(a * kj for a, kj in zip(A[i], k) if a != 0.0)
        k.append(np.asarray(fun(t + C[i] * h, yi), dtype=float))
    y4 = y + h * sum(b * kj for b, kj in zip(B4, k) if b != 0.0)
    err = h * sum(e * kj for e, kj in zip(E, k) if e != 0.0)
    return y4, err


def solve(
    fun: RHS,
    t_span: tuple[float, float],
    y0,
    cfg: IntegratorConfig = IntegratorConfig(),
    legs: Optional[Sequence[tuple[float, float]]] = None,
) -> OdeSolution:
    """Integrate ``y' = fun(t, y)`` over ``t_span``.

    ``legs`` optionally splits the interval into consecutive pieces
    ``(t_stop, h_max)``; each ``t_stop`` is hit exactly and steps inside a
    leg never exceed its ``h_max``. Use this for inputs with kinks.

    Raises
    ------
    StiffnessError
        When the controller asks for ``h < cfg.h_min``.
    DomainError
        When the right-hand side keeps failing down to ``h_min``.
    """
    t0, t1 = map(float, t_span)
    if not t1 > t0:
        raise ConfigError(f"empty time span {t_span!r}")
    if legs is None:
        legs = [(t1, cfg.h_max)]
    legs = [(float(ts), min(float(hm), cfg.h_max)) for ts, hm in legs]
    if abs(legs[-1][0] - t1) > 0 or any(b[0] <= a[0] for a, b in zip(legs, legs[1:])):
        raise ConfigError("legs must be increasing and end at t_span[1]")

    y = np.array(y0, dtype=float)
    stats = IntegratorStats()

    def rhs(t, yy):
        stats.nfev += 1
        return np.asarray(fun(t, yy), dtype=float)

    try:
        k1 = rhs(t0, y)
    except (ArithmeticError, ValueError) as exc:
        raise DomainError(f"right-hand side failed: {exc}", t=t0) from exc
    ts, ys, dys = [t0], [y.copy()], [k1.copy()]
    t = t0
    h = cfg.h_init
    err_prev = 1.0
    last_err = 0.0

    for t_stop, h_max in legs:
        if t_stop <= t0:
            continue
        while t < t_stop:
            h = min(h, h_max)
            remaining = t_stop - t
            final = h >= remaining * (1 - 1e-12)
            h_try = remaining if final else h
            if h_try < cfg.h_min and not final:
                raise StiffnessError(t, h_try, last_err, stats)
            failure = None
            try:
                y_new, err_vec = step(rhs, t, y, k1, h_try)
                err = _error_norm(err_vec, y, y_new, cfg)
                if not (math.isfinite(err) and np.all(np.isfinite(y_new))):
                    failure = "non-finite state"
            except (ArithmeticError, ValueError) as exc:
                failure = str(exc)
            if failure is not None:
                stats.rejected += 1
                if h_try <= cfg.h_min:
                    raise DomainError(f"right-hand side failed: {failure}", t=t)
                h = max(0.25 * h_try, min(cfg.h_min, h_try))
                continue
            last_err = err
            if err <= 1.0:
                t_new = t_stop if final else t + h_try
                try:
                    k_new = rhs(t_new, y_new)
                except (ArithmeticError, ValueError) as exc:
                    raise DomainError(f"right-hand side failed: {exc}", t=t_new) from exc
                t, y, k1 = t_new, y_new, k_new
                ts.append(t)
                ys.append(y.copy())
                dys.append(k1.copy())
                stats.accepted += 1
                stats.max_error = max(stats.max_error, err)
                if err == 0.0:
                    fac = FAC_MAX
                else:
                    fac = SAFETY * err ** (-PI_ALPHA) * err_prev ** PI_BETA
                    fac = min(FAC_MAX, max(FAC_MIN, fac))
                err_prev = max(err, 1e-4)
                # a truncated final step says nothing about the step size
                h = h if final and h_try < h else h_try * fac
            else:
                stats.rejected += 1
                h = h_try * max(FAC_MIN, SAFETY * err ** (-1 / 5))

    return OdeSolution(np.array(ts), np.array(ys), np.array(dys), stats)


def solve_fixed(fun: RHS, t_span, y0, n_steps: int) -> np.ndarray:
    """Propagate the 4th-order Fehlberg solution with ``n_steps`` equal steps.

    Returns the state at ``t_span[1]``; used for order verification.
    """
    t0, t1 = map(float, t_span)
    h = (t1 - t0) / n_steps
    y = np.array(y0, dtype=float)
    for i in range(n_steps):
        t = t0 + i * h
        y, _ = step(fun, t, y, np.asarray(fun(t, y), dtype=float), h)
    return y
