"""Convergence study of the regularized step experiment.

For each ``n`` the mass starts at rest in equilibrium and is driven by the
regularized force ``F_n``; the exact (generalized) response is a jump of the
position to ``x_jp`` and of the stress to ``sigma_jp``. Metrics are taken
after the transition window, on ``[2/n, T]``, where ``F_n`` coincides with
the smooth part of the exact force.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .. import jump, oracle
from ..dynamics import Trajectory, integrate_mass
from ..errors import StepResponseError
from ..regularize import SmoothHeaviside, experiment_force
from .config import ExperimentConfig
from .output import write_json, write_trajectory

logger = logging.getLogger(__name__)

WINDOW_STEPS = 20  # minimum steps across the transition window


@dataclass
class RunRecord:
    n: int
    sigma_at_2_over_n: Optional[float] = None
    x_sup_error: Optional[float] = None
    v_sup_error: Optional[float] = None
    x_end_error: Optional[float] = None
    sigma_closed_at_2_over_n: Optional[float] = None
    steps_accepted: int = 0
    steps_rejected: int = 0
    error: Optional[str] = None


@dataclass
class ConvergenceReport:
    predicted_sigma_jump: float
    predicted_x_jump: float
    runs: list[RunRecord] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def record(self, n: int) -> RunRecord:
        for r in self.runs:
            if r.n == n:
                return r
        raise KeyError(n)

    def monotone(self, metric: str, reference: Optional[float] = None) -> bool:
        """Whether ``metric`` (an error, or ``|value - reference|``) is nonincreasing in n."""
        vals = [getattr(r, metric) for r in self.runs]
        if any(v is None for v in vals):
            return False
        if reference is not None:
            vals = [abs(v - reference) for v in vals]
        return all(b <= a for a, b in zip(vals, vals[1:]))

    def to_dict(self) -> dict:
        return {
            "predicted_sigma_jump": self.predicted_sigma_jump,
            "predicted_x_jump": self.predicted_x_jump,
            "runs": [asdict(r) for r in self.runs],
            "config": self.config,
        }


def simulate_n(cfg: ExperimentConfig, n: int) -> Trajectory:
    """Response of the mass to ``F_n`` on ``[0, T]``."""
    model, T = cfg.model, cfg.T
    hs = SmoothHeaviside(n)
    force = experiment_force(model, cfg.eps_jp, cfg.x_jp, hs)
    icfg = cfg.integrator
    legs = [(min(1.0 / n, T), min(icfg.h_max, 1.0 / (WINDOW_STEPS * n)))]
    if 2.0 / n < T:
        legs.append((2.0 / n, icfg.h_max))
    if legs[-1][0] < T:
        legs.append((T, icfg.h_max))
    return integrate_mass(model, force, None, (0.0, T), icfg, legs=legs)


def metrics(cfg: ExperimentConfig, n: int, traj: Trajectory) -> RunRecord:
    sol = traj.solution
    t_lo = 2.0 / n
    params = oracle.ExpCaseParams.from_model(cfg.model)
    rec = RunRecord(
        n=n,
        steps_accepted=traj.stats.accepted,
        steps_rejected=traj.stats.rejected,
        sigma_closed_at_2_over_n=float(oracle.sigma_plus_closed(params, cfg.eps_jp, t_lo)),
    )
    if t_lo > cfg.T:
        rec.error = f"metric window [2/n, T] is empty for n={n}"
        return rec
    rec.sigma_at_2_over_n = float(sol(t_lo)[2])
    mask_nodes = sol.t >= t_lo
    mask_dense = traj.t >= t_lo
    x = np.concatenate([sol.y[mask_nodes, 0], traj.x[mask_dense]])
    v = np.concatenate([sol.y[mask_nodes, 1], traj.v[mask_dense]])
    rec.x_sup_error = float(np.max(np.abs(x - cfg.x_jp)))
    rec.v_sup_error = float(np.max(np.abs(v)))
    rec.x_end_error = float(abs(sol.y[-1, 0] - cfg.x_jp))
    return rec


def _run_one(cfg: ExperimentConfig, n: int, write: bool):
    try:
        traj = simulate_n(cfg, n)
    except StepResponseError as exc:
        logger.warning("n=%d failed: %s", n, exc)
        return RunRecord(n=n, error=f"{type(exc).__name__}: {exc}"), None
    rec = metrics(cfg, n, traj)
    return rec, (traj if write else None)


def run_convergence(cfg: ExperimentConfig, write: bool = True) -> ConvergenceReport:
    """Run the experiment for every ``n`` in ``cfg.n_list``.

    With ``write`` set, one trajectory CSV per ``n`` and ``summary.json`` are
    written to ``cfg.output_dir``. Failed integrations are recorded in the
    report and do not stop the study.
    """
    cfg.validate_convergence()
    sigma_jp = jump.strain_jump_stress(cfg.model, cfg.eps_jp)
    report = ConvergenceReport(
        predicted_sigma_jump=sigma_jp, predicted_x_jump=cfg.x_jp, config=cfg.echo()
    )
    if cfg.workers > 1 and len(cfg.n_list) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_run_one, cfg, n, write) for n in cfg.n_list]
            results = [f.result() for f in futures]
    else:
        results = [_run_one(cfg, n, write) for n in cfg.n_list]

    if write:
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
    for rec, traj in results:
        report.runs.append(rec)
        if write and traj is not None:
            write_trajectory(cfg.output_dir / f"trajectory_n{rec.n}.csv", traj)
    if write:
        write_json(cfg.output_dir / "summary.json", report.to_dict())
    return report


def any_failed(report: ConvergenceReport) -> bool:
    return any(r.error is not None for r in report.runs)


__all__ = [
    "RunRecord",
    "ConvergenceReport",
    "run_convergence",
    "simulate_n",
    "metrics",
    "any_failed",
]
