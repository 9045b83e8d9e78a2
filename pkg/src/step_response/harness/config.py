"""Experiment configuration: JSON document, defaults and dotted overrides.

Schema (all keys optional, defaults reproduce the reference experiment)::

    {
      "model": {"g1": {"family": "exp", "a": 1.732..., "c": 0.1},
                "g2": {"family": "exp", "a": 1.732..., "c": 11.0},
                "g3": {"family": "cubic", "E": 3.0, "gamma": 5.0},
                "m": 7.0, "x_eq": 1.0},
      "x_jp": 1.414...,          # position after the jump
      "eps_jp": null,            # strain jump; overrides x_jp when given
      "n_list": [4, 16, 64, 256],
      "T": 1.0,                  # horizon of the mass experiments
      "T_relax": 0.2,            # horizon of relax / oracle
      "integrator": {"rel_tol": 1e-8, "abs_tol": 1e-10, "h_init": 1e-5,
                     "h_min": 1e-14, "h_max": 0.01, "dense_output_dt": 0.001},
      "force": {"kind": "experiment", "n": 256},   # simulate only
      "output_dir": "results",
      "workers": 1
    }

Constitutive families: ``linear`` (k), ``exp`` (a, c), ``cubic`` (E, gamma).
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional

from ..constitutive import SpringDashpotModel
from ..errors import ConfigError
from ..rkf45 import IntegratorConfig

SQRT3 = math.sqrt(3.0)
SQRT2 = math.sqrt(2.0)

DEFAULTS: dict[str, Any] = {
    "model": {
        "g1": {"family": "exp", "a": SQRT3, "c": 0.1},
        "g2": {"family": "exp", "a": SQRT3, "c": 11.0},
        "g3": {"family": "cubic", "E": 3.0, "gamma": 5.0},
        "m": 7.0,
        "x_eq": 1.0,
    },
    "x_jp": SQRT2,
    "eps_jp": None,
    "n_list": [4, 16, 64, 256],
    "T": 1.0,
    "T_relax": 0.2,
    "integrator": {
        "rel_tol": 1e-8,
        "abs_tol": 1e-10,
        "h_init": 1e-5,
        "h_min": 1e-14,
        "h_max": 1e-2,
        "dense_output_dt": 1e-3,
    },
    "force": {"kind": "experiment", "n": 256},
    "output_dir": "results",
    "workers": 1,
}

# values not fixed by the underlying experiment, echoed in every summary
ARTIFACT_DECISIONS = ("n_list", "T", "T_relax", "integrator")

FORCE_KINDS = ("experiment", "zero", "constant")


@dataclass(frozen=True)
class ExperimentConfig:
    model: SpringDashpotModel
    x_jp: float
    n_list: tuple[int, ...]
    T: float
    integrator: IntegratorConfig
    output_dir: Path
    T_relax: float = 0.2
    force: dict = field(default_factory=lambda: dict(DEFAULTS["force"]))
    workers: int = 1
    document: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def eps_jp(self) -> float:
        return self.model.strain(self.x_jp)

    def validate_convergence(self) -> None:
        """The convergence study needs ``[2/n, T]`` non-empty for every ``n``."""
        if not self.n_list:
            raise ConfigError("n_list must be non-empty")
        if any(b <= a for a, b in zip(self.n_list, self.n_list[1:])):
            raise ConfigError("n_list must be strictly increasing")
        if not self.T > 2.0 / self.n_list[0]:
            raise ConfigError(
                f"T={self.T} must exceed 2/n={2.0 / self.n_list[0]} for the smallest n"
            )

    @classmethod
    def from_document(cls, doc: dict) -> "ExperimentConfig":
        unknown = set(doc) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        merged = _deep_merge(copy.deepcopy(DEFAULTS), doc)
        model = SpringDashpotModel.from_dict(merged["model"])
        if merged["eps_jp"] is not None:
            x_jp = model.x_eq * (1.0 + _number("eps_jp", merged["eps_jp"]))
        else:
            x_jp = _number("x_jp", merged["x_jp"])
        n_list = _n_list(merged["n_list"])
        T = _number("T", merged["T"])
        T_relax = _number("T_relax", merged["T_relax"])
        if not (T > 0 and T_relax > 0):
            raise ConfigError("time horizons must be positive")
        integ = merged["integrator"]
        unknown = set(integ) - set(DEFAULTS["integrator"])
        if unknown:
            raise ConfigError(f"unknown integrator keys: {sorted(unknown)}")
        integrator = IntegratorConfig(**{k: _number(k, v) for k, v in integ.items()})
        force = dict(merged["force"])
        if force.get("kind") not in FORCE_KINDS:
            raise ConfigError(f"force.kind must be one of {FORCE_KINDS}")
        workers = merged["workers"]
        if not isinstance(workers, int) or workers < 1:
            raise ConfigError("workers must be a positive integer")
        return cls(
            model=model,
            x_jp=x_jp,
            n_list=n_list,
            T=T,
            integrator=integrator,
            output_dir=Path(merged["output_dir"]),
            T_relax=T_relax,
            force=force,
            workers=workers,
            document=merged,
        )

    def echo(self) -> dict:
        """Fully resolved configuration, labelled with the artifact decisions."""
        doc = copy.deepcopy(self.document) if self.document else {}
        doc["model"] = self.model.to_dict()
        doc["x_jp"] = self.x_jp
        doc["eps_jp"] = self.eps_jp
        doc["output_dir"] = str(self.output_dir)
        doc["artifact_decisions"] = list(ARTIFACT_DECISIONS)
        return doc


def _number(name, value) -> float:
    if isinstance(value, bool):
        raise ConfigError(f"{name} must be a number")
    try:
        out = float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name} must be a number, got {value!r}") from exc
    if not math.isfinite(out):
        raise ConfigError(f"{name} must be finite")
    return out


def _n_list(values) -> tuple[int, ...]:
    if isinstance(values, (int, float)):
        values = [values]
    try:
        out = tuple(int(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"n_list must be a list of integers, got {values!r}") from exc
    if any(o != v or o < 1 for o, v in zip(out, values)):
        raise ConfigError(f"n_list entries must be positive integers, got {values!r}")
    return out


def _deep_merge(base: dict, update: dict) -> dict:
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            # constitutive descriptions are replaced whole when the family changes
            if "family" in value and value.get("family") != base[key].get("family"):
                base[key] = copy.deepcopy(value)
            else:
                _deep_merge(base[key], value)
        else:
            base[key] = value
    return base


def parse_override(text: str) -> tuple[list[str], Any]:
    """Parse ``dotted.key=value``; the value is read as JSON, else as a string."""
    if "=" not in text:
        raise ConfigError(f"override {text!r} must look like key=value")
    key, raw = text.split("=", 1)
    path = [p for p in key.strip().split(".") if p]
    if not path:
        raise ConfigError(f"override {text!r} has an empty key")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return path, value


def apply_overrides(doc: dict, overrides: Iterable[str]) -> dict:
    doc = copy.deepcopy(doc)
    for text in overrides:
        path, value = parse_override(text)
        node = doc
        for part in path[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"cannot override inside non-object at {text!r}")
        node[path[-1]] = value
    return doc


def load_document(path: Optional[str | Path]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a JSON object")
    return doc


def load_config(path=None, overrides: Iterable[str] = ()) -> ExperimentConfig:
    return ExperimentConfig.from_document(apply_overrides(load_document(path), overrides))
