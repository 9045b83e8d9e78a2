"""``step-response`` command line interface.

Exit status: 0 on success, 2 on configuration errors, 3 on numerical
failures.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from typing import Optional, Sequence

from .. import jump, oracle
from ..dynamics import integrate_mass, integrate_relaxation
from ..errors import ConfigError, StepResponseError
from ..regularize import SmoothHeaviside, experiment_force
from ..rkf45 import dense_grid
from ..signals import SmoothSignal
from .config import load_config
from .experiment import any_failed, run_convergence
from .output import dumps, trajectory_csv, write_rows

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

COMMANDS = ("jump", "relax", "simulate", "oracle", "converge")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="step-response",
        description="Step response of nonlinear spring-dashpot and mass systems.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config entry, e.g. model.g2.c=11 or n_list=[4,16]",
    )
    parser.add_argument("--eps-jp", type=float, help="strain jump (overrides x_jp)")
    parser.add_argument("--x-jp", type=float, help="position after the jump")
    parser.add_argument("--T", type=float, help="time horizon")
    parser.add_argument("--n", type=int, nargs="+", help="regularization indices")
    parser.add_argument("--output-dir", help="directory for converge outputs")
    parser.add_argument("-o", "--output", help="write CSV/JSON here instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def _overrides(args) -> list[str]:
    out = list(args.param)
    if args.x_jp is not None:
        out += [f"x_jp={args.x_jp!r}", "eps_jp=null"]
    if args.eps_jp is not None:
        out.append(f"eps_jp={args.eps_jp!r}")
    if args.T is not None:
        key = "T_relax" if args.command in ("relax", "oracle") else "T"
        out.append(f"{key}={args.T!r}")
    if args.n is not None:
        if args.command == "simulate":
            out += ['force.kind="experiment"', f"force.n={args.n[0]}"]
        else:
            out.append(f"n_list={json.dumps(args.n)}")
    if args.output_dir is not None:
        out.append(f"output_dir={json.dumps(args.output_dir)}")
    return out


def run_jump(cfg) -> str:
    jv = jump.mass_jump_values(cfg.model, SmoothSignal.constant(cfg.x_jp))
    return dumps({**jv.to_dict(), "x_jp": cfg.x_jp})


def run_relax(cfg) -> str:
    traj = integrate_relaxation(
        cfg.model, SmoothSignal.constant(cfg.eps_jp), None, (0.0, cfg.T_relax), cfg.integrator
    )
    return trajectory_csv(traj)


def run_oracle(cfg) -> str:
    params = oracle.ExpCaseParams.from_model(cfg.model)
    times = dense_grid(0.0, cfg.T_relax, cfg.integrator.dense_output_dt)
    sigma = oracle.sigma_plus_closed(params, cfg.eps_jp, times)
    f = oracle.f_plus_cumulative(params, cfg.eps_jp, times)
    buf = io.StringIO()
    write_rows(buf, ("t", "sigma", "f"), zip(times, sigma, f))
    return buf.getvalue()


def _force(cfg):
    spec = cfg.force
    kind = spec["kind"]
    if kind == "zero":
        return lambda t: 0.0, None
    if kind == "constant":
        value = float(spec.get("value", 0.0))
        return (lambda t: value if t >= 0.0 else 0.0), None
    n = int(spec.get("n", 256))
    hs = SmoothHeaviside(n)
    return experiment_force(cfg.model, cfg.eps_jp, cfg.x_jp, hs), n


def run_simulate(cfg) -> str:
    force, n = _force(cfg)
    legs = None
    icfg = cfg.integrator
    if n is not None and 1.0 / n < cfg.T:
        legs = [(1.0 / n, min(icfg.h_max, 1.0 / (20 * n))), (cfg.T, icfg.h_max)]
    traj = integrate_mass(cfg.model, force, None, (0.0, cfg.T), icfg, legs=legs)
    return trajectory_csv(traj)


def run_converge(cfg) -> tuple[str, bool]:
    report = run_convergence(cfg, write=True)
    return dumps(report.to_dict()), any_failed(report)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    failed = False
    try:
        cfg = load_config(args.config, _overrides(args))
        if args.command == "converge":
            cfg.validate_convergence()
        handler = {
            "jump": run_jump,
            "relax": run_relax,
            "oracle": run_oracle,
            "simulate": run_simulate,
        }.get(args.command)
        if handler is not None:
            text = handler(cfg)
        else:
            text, failed = run_converge(cfg)
    except ConfigError as exc:
        print(f"step-response: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StepResponseError as exc:
        print(f"step-response: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_NUMERICAL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
