"""Smooth time functions with derivative access."""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

Fn = Callable[[float], float]


class SmoothSignal:
    """A smooth scalar function of time with optional analytic derivatives.

    Missing derivatives fall back to second-order central differences with
    step ``fd_step``.
    """

    def __init__(
        self,
        value: Fn,
        d1: Optional[Fn] = None,
        d2: Optional[Fn] = None,
        fd_step: float = 1e-5,
    ):
        self._value = value
        self._d1 = d1
        self._d2 = d2
        self.fd_step = fd_step

    @property
    def has_d1(self) -> bool:
        return self._d1 is not None

    @property
    def has_d2(self) -> bool:
        return self._d2 is not None

    def __call__(self, t: float) -> float:
        return self._value(t)

    value = __call__

    def d1(self, t: float, h: Optional[float] = None) -> float:
        if self._d1 is not None:
            return self._d1(t)
        h = self.fd_step if h is None else h
        return (self._value(t + h) - self._value(t - h)) / (2.0 * h)

    def d2(self, t: float, h: Optional[float] = None) -> float:
        if self._d2 is not None:
            return self._d2(t)
        if self._d1 is not None:
            h = self.fd_step if h is None else h
            return (self._d1(t + h) - self._d1(t - h)) / (2.0 * h)
        h = 10.0 * self.fd_step if h is None else h
        return (self._value(t + h) - 2.0 * self._value(t) + self._value(t - h)) / (h * h)

    @classmethod
    def constant(cls, c: float) -> "SmoothSignal":
        c = float(c)
        return cls(lambda t: c, lambda t: 0.0, lambda t: 0.0)

    @classmethod
    def affine(cls, c0: float, c1: float) -> "SmoothSignal":
        """``c0 + c1 t``."""
        c0, c1 = float(c0), float(c1)
        return cls(lambda t: c0 + c1 * t, lambda t: c1, lambda t: 0.0)

    @classmethod
    def polynomial(cls, coeffs) -> "SmoothSignal":
        """Polynomial with coefficients in increasing order of degree."""
        p = np.polynomial.Polynomial(coeffs)
        dp, ddp = p.deriv(1), p.deriv(2)
        return cls(lambda t: float(p(t)), lambda t: float(dp(t)), lambda t: float(ddp(t)))

    @classmethod
    def from_samples(cls, t, y, dy) -> "SmoothSignal":
        """Piecewise cubic Hermite interpolant through ``(t, y, dy)`` samples.

        At the sample points the value and first derivative are reproduced
        exactly; evaluation outside ``[t[0], t[-1]]`` raises ``ValueError``.
        """
        t = np.asarray(t, dtype=float)
        y = np.asarray(y, dtype=float)
        dy = np.asarray(dy, dtype=float)

        def locate(s):
            if not (t[0] <= s <= t[-1]):
                raise ValueError(f"t={s!r} outside sampled interval [{t[0]}, {t[-1]}]")
            i = min(max(int(np.searchsorted(t, s, side="right")) - 1, 0), len(t) - 2)
            h = t[i + 1] - t[i]
            return i, h, (s - t[i]) / h

        def value(s):
            i, h, u = locate(s)
            return hermite(u, h, y[i], y[i + 1], dy[i], dy[i + 1])

        def d1(s):
            i, h, u = locate(s)
            return hermite_d1(u, h, y[i], y[i + 1], dy[i], dy[i + 1])

        return cls(value, d1)


def hermite(u, h, y0, y1, d0, d1):
    """Cubic Hermite interpolant at normalized position ``u`` in ``[0, 1]``."""
    u2 = u * u
    u3 = u2 * u
    return (
        (2 * u3 - 3 * u2 + 1) * y0
        + (u3 - 2 * u2 + u) * h * d0
        + (-2 * u3 + 3 * u2) * y1
        + (u3 - u2) * h * d1
    )


def hermite_d1(u, h, y0, y1, d0, d1):
    u2 = u * u
    return (
        (6 * u2 - 6 * u) * y0 / h
        + (3 * u2 - 4 * u + 1) * d0
        + (-6 * u2 + 6 * u) * y1 / h
        + (3 * u2 - 2 * u) * d1
    )
