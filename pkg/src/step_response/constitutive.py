"""Nonlinear constitutive functions for the spring-dashpot network.

Every element is described by a smooth, strictly increasing scalar function
``g`` with ``g(0) = 0``:

* dashpot ``g1``: strain rate as a function of stress,
* series spring ``g2``: strain as a function of stress,
* parallel spring ``g3``: stress as a function of strain.

Stresses and forces are used interchangeably; strains are dimensionless.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import ConfigError, DomainError, NumericalError, RangeError

__all__ = [
    "ConstitutiveFn",
    "Linear",
    "ExpSaturating",
    "CubicStiffening",
    "Custom",
    "SpringDashpotModel",
    "constitutive_from_dict",
]

INVERSE_RTOL = 1e-12
_MAX_NEWTON_ITER = 200
_MAX_BRACKET_GROWTH = 200


def _positive(name, value):
    value = float(value)
    if not (value > 0.0 and math.isfinite(value)):
        raise ConfigError(f"{name} must be a finite positive number, got {value!r}")
    return value


class ConstitutiveFn(ABC):
    """Smooth invertible scalar function with ``g(0) == 0``."""

    family: str = ""

    @property
    def domain(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    @abstractmethod
    def _value(self, s: float) -> float: ...

    @abstractmethod
    def _deriv(self, s: float) -> float: ...

    @abstractmethod
    def params(self) -> dict[str, float]: ...

    def _check(self, s):
        lo, hi = self.domain
        if not (lo <= s <= hi):
            raise DomainError(f"{self.family}: argument {s!r} outside domain [{lo}, {hi}]")

    def __call__(self, s: float) -> float:
        self._check(s)
        if s == 0.0:
            return 0.0
        try:
            return self._value(s)
        except OverflowError as exc:
            raise DomainError(f"{self.family}: overflow evaluating g({s!r})") from exc

    def deriv(self, s: float) -> float:
        self._check(s)
        try:
            return self._deriv(s)
        except OverflowError as exc:
            raise DomainError(f"{self.family}: overflow evaluating g'({s!r})") from exc

    def inverse(self, y: float) -> float:
        """Return ``s`` with ``g(s) == y``.

        The default implementation is a safeguarded Newton iteration; families
        with a closed-form inverse override it.
        """
        if y == 0.0:
            return 0.0
        return newton_bisect(self, self.deriv, y, y / self.deriv(0.0), self.domain)

    def to_dict(self) -> dict:
        return {"family": self.family, **self.params()}


def newton_bisect(
    func: Callable[[float], float],
    dfunc: Callable[[float], float],
    y: float,
    x0: float,
    domain: tuple[float, float] = (-math.inf, math.inf),
    rtol: float = INVERSE_RTOL,
) -> float:
    """Solve ``func(x) == y`` for strictly increasing ``func``.

    Newton steps are taken from ``x0`` and replaced by bisection whenever they
    leave the current bracket. The bracket is grown geometrically from ``x0``
    and clipped to ``domain``.

    Raises
    ------
    RangeError
        If ``y`` is not attained on ``domain``.
    NumericalError
        If the residual does not drop below ``rtol * max(1, |y|)``.
    """
    lo_dom, hi_dom = domain
    tol = rtol * max(1.0, abs(y))
    x0 = min(max(x0, lo_dom), hi_dom)

    # bracket [lo, hi] with func(lo) <= y <= func(hi)
    step = max(abs(x0), 1.0)
    lo = hi = x0
    f0 = func(x0) - y
    if abs(f0) <= tol:
        return x0
    try:
        if f0 < 0.0:
            for _ in range(_MAX_BRACKET_GROWTH):
                hi = min(hi + step, hi_dom)
                if func(hi) - y >= 0.0:
                    break
                if hi == hi_dom:
                    raise RangeError(f"value {y!r} above the range of the function")
                lo = hi
                step *= 2.0
            else:
                raise RangeError(f"value {y!r} not bracketed")
        else:
            for _ in range(_MAX_BRACKET_GROWTH):
                lo = max(lo - step, lo_dom)
                if func(lo) - y <= 0.0:
                    break
                if lo == lo_dom:
                    raise RangeError(f"value {y!r} below the range of the function")
                hi = lo
                step *= 2.0
            else:
                raise RangeError(f"value {y!r} not bracketed")
    except (OverflowError, DomainError) as exc:
        raise RangeError(f"value {y!r} not attained before overflow") from exc

    x = x0 if lo <= x0 <= hi else 0.5 * (lo + hi)
    for _ in range(_MAX_NEWTON_ITER):
        r = func(x) - y
        if abs(r) <= tol:
            return x
        if r < 0.0:
            lo = x
        else:
            hi = x
        d = dfunc(x)
        x_new = x - r / d if d > 0.0 else math.nan
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if x_new == x:
            break
        x = x_new
    r = func(x) - y
    if abs(r) <= tol:
        return x
    raise NumericalError(f"inversion did not converge for y={y!r}: residual {r:.3e}")


@dataclass(frozen=True)
class Linear(ConstitutiveFn):
    """``g(s) = k s``."""

    k: float
    family = "linear"

    def __post_init__(self):
        object.__setattr__(self, "k", _positive("k", self.k))

    def _value(self, s):
        return self.k * s

    def _deriv(self, s):
        return self.k

    def inverse(self, y):
        return y / self.k

    def params(self):
        return {"k": self.k}


@dataclass(frozen=True)
class ExpSaturating(ConstitutiveFn):
    """``g(s) = (exp(a s) - 1) / (a c)``.

    Tends to the linear function ``s / c`` as ``a -> 0+``. The inverse is
    ``log(1 + a c y) / a``, defined for ``y > -1 / (a c)``.
    """

    a: float
    c: float
    family = "exp"

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))
        object.__setattr__(self, "c", _positive("c", self.c))

    def _value(self, s):
        return math.expm1(self.a * s) / (self.a * self.c)

    def _deriv(self, s):
        return math.exp(self.a * s) / self.c

    def inverse(self, y):
        arg = self.a * self.c * y
        if not arg > -1.0:
            raise RangeError(
                f"exp: value {y!r} outside range (-{1.0 / (self.a * self.c)}, inf)"
            )
        return math.log1p(arg) / self.a

    def params(self):
        return {"a": self.a, "c": self.c}


@dataclass(frozen=True)
class CubicStiffening(ConstitutiveFn):
    """``g(s) = E (1 + gamma s**2) s``; strictly increasing for ``gamma >= 0``."""

    E: float
    gamma: float = 0.0
    family = "cubic"

    def __post_init__(self):
        object.__setattr__(self, "E", _positive("E", self.E))
        gamma = float(self.gamma)
        if not (gamma >= 0.0 and math.isfinite(gamma)):
            raise ConfigError(f"gamma must be finite and non-negative, got {gamma!r}")
        object.__setattr__(self, "gamma", gamma)

    def _value(self, s):
        return self.E * (1.0 + self.gamma * s * s) * s

    def _deriv(self, s):
        return self.E * (1.0 + 3.0 * self.gamma * s * s)

    def params(self):
        return {"E": self.E, "gamma": self.gamma}


@dataclass(frozen=True)
class Custom(ConstitutiveFn):
    """User-supplied function on a declared interval.

    ``value`` must vanish at zero and ``derivative`` must be positive on the
    interval; both are spot-checked at construction.
    """

    value: Callable[[float], float]
    derivative: Callable[[float], float]
    lower: float
    upper: float
    name: str = "custom"
    family = "custom"

    def __post_init__(self):
        if not self.lower < 0.0 < self.upper:
            raise ConfigError("custom domain must contain 0 in its interior")
        if self.value(0.0) != 0.0:
            raise ConfigError("custom function must satisfy g(0) == 0")
        for s in _probe_points(self.lower, self.upper):
            if not self.derivative(s) > 0.0:
                raise ConfigError(f"custom function is not strictly increasing near {s!r}")

    @property
    def domain(self):
        return (self.lower, self.upper)

    def _value(self, s):
        return self.value(s)

    def _deriv(self, s):
        return self.derivative(s)

    def params(self):
        return {"name": self.name, "lower": self.lower, "upper": self.upper}


def _probe_points(lo, hi, n=33):
    lo = max(lo, -1e3)
    hi = min(hi, 1e3)
    return [lo + (hi - lo) * (i + 0.5) / n for i in range(n)]


_FAMILIES = {
    "linear": (Linear, ("k",)),
    "exp": (ExpSaturating, ("a", "c")),
    "expsaturating": (ExpSaturating, ("a", "c")),
    "cubic": (CubicStiffening, ("E", "gamma")),
    "cubicstiffening": (CubicStiffening, ("E", "gamma")),
}


def constitutive_from_dict(spec: Mapping) -> ConstitutiveFn:
    """Build a constitutive function from ``{"family": ..., <params>}``."""
    if not isinstance(spec, Mapping) or "family" not in spec:
        raise ConfigError(f"constitutive description needs a 'family' key: {spec!r}")
    key = str(spec["family"]).lower().replace("_", "")
    if key not in _FAMILIES:
        raise ConfigError(f"unknown constitutive family {spec['family']!r}")
    cls, names = _FAMILIES[key]
    extra = set(spec) - {"family", *names}
    if extra:
        raise ConfigError(f"unexpected parameters for {key}: {sorted(extra)}")
    try:
        kwargs = {k: float(spec[k]) for k in names if k in spec}
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad parameters for {key}: {exc}") from exc


@dataclass(frozen=True)
class SpringDashpotModel:
    """Dashpot ``g1`` in series with spring ``g2``, in parallel with spring ``g3``.

    ``m`` is the attached mass and ``x_eq`` the equilibrium length; the strain
    of the network is ``(x - x_eq) / x_eq``.
    """

    g1: ConstitutiveFn
    g2: ConstitutiveFn
    g3: ConstitutiveFn
    m: float = 1.0
    x_eq: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "m", _positive("m", self.m))
        object.__setattr__(self, "x_eq", _positive("x_eq", self.x_eq))

    def strain(self, x: float) -> float:
        return (x - self.x_eq) / self.x_eq

    def to_dict(self) -> dict:
        return {
            "g1": self.g1.to_dict(),
            "g2": self.g2.to_dict(),
            "g3": self.g3.to_dict(),
            "m": self.m,
            "x_eq": self.x_eq,
        }

    @classmethod
    def from_dict(cls, spec: Mapping) -> "SpringDashpotModel":
        try:
            g1, g2, g3 = (constitutive_from_dict(spec[k]) for k in ("g1", "g2", "g3"))
        except KeyError as exc:
            raise ConfigError(f"model description is missing {exc.args[0]!r}") from exc
        extra = set(spec) - {"g1", "g2", "g3", "m", "x_eq"}
        if extra:
            raise ConfigError(f"unexpected model keys: {sorted(extra)}")
        return cls(g1, g2, g3, m=spec.get("m", 1.0), x_eq=spec.get("x_eq", 1.0))
