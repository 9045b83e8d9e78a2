"""Configuration, experiment orchestration and the command line interface."""

from .config import ExperimentConfig, load_config
from .experiment import ConvergenceReport, RunRecord, run_convergence

__all__ = ["ExperimentConfig", "load_config", "ConvergenceReport", "RunRecord", "run_convergence"]
