"""Command-line front end: ``coxswim {simulate,purcell-scan,sweep}``."""

import argparse
import copy
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import ConfigError, load_config, scan_grid
from .controllability import controllability_report
from .dynamics import simulate, reconstruct_world
from .geometry import ModelParams
from .output import (csv_text, fmt, json_text, snapshot_csv, trajectory_csv,
                     trajectory_svg)
from .solver import SingularSystemError

log = logging.getLogger("coxswim")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3
SWEEP_PARAMETERS = ("c1", "c2", "c3", "h", "delta", "beta", "dt")


def run_simulation(cfg):
    """Trajectory plus world-frame shape snapshots keyed by time."""
    program = cfg.shape_program()
    r = cfg.run
    traj = simulate(program, cfg.model, r.t_end, r.dt, r.mode, r.sampling)
    snaps = {}
    for t in r.snapshots:
        k = int(round(t / r.dt))
        curve, _ = program(traj.t[k])
        snaps[t] = (curve.s, reconstruct_world(curve, traj.pose_at(k)))
    return traj, snaps


def _snapshot_name(t):
    return f"shapes_{t:g}.csv"


def simulation_files(cfg, traj, snaps):
    files = {"trajectory.csv": trajectory_csv(traj)}
    for t, (s, pts) in snaps.items():
        files[_snapshot_name(t)] = snapshot_csv(s, pts)
    files["plots.svg"] = trajectory_svg(traj)
    meta = {
        "command": "simulate",
        "version": __version__,
        "config": cfg.to_dict(),
        "steps": len(traj) - 1,
        "max_balance_residual": float(np.max(traj.residual)),
        "outputs": sorted(files) + ["run_meta.json"],
    }
    files["run_meta.json"] = json_text(meta)
    return files


def scan_files(cfg):
    a1, a2 = scan_grid(cfg.scan)
    rows = controllability_report(a1, a2, cfg.model, rtol=cfg.scan.rank_rtol)
    table = [(fmt(r.alpha1), fmt(r.alpha2), str(r.rank_weak), str(r.rank_strong),
              str(r.weak).lower(), str(r.strong).lower()) for r in rows]
    failed = [r for r in rows if r.error]
    summary = {
        "command": "purcell-scan",
        "version": __version__,
        "config": cfg.to_dict(),
        "points": len(rows),
        "weak": sum(r.weak for r in rows),
        "strong": sum(r.strong for r in rows),
        "failed": len(failed),
        "failures": [{"alpha1": r.alpha1, "alpha2": r.alpha2, "error": r.error} for r in failed],
        "min_relative_sigma": min((r.sigma_min for r in rows if not r.error), default=None),
    }
    return {
        "rank_map.csv": csv_text(("alpha1", "alpha2", "rank_weak", "rank_strong", "weak", "strong"),
                                 table),
        "summary.json": json_text(summary),
    }


def with_parameter(cfg, name, value):
    """Copy of ``cfg`` with one sweep parameter replaced."""
    if name not in SWEEP_PARAMETERS:
        raise ConfigError(f"sweep parameter must be one of {', '.join(SWEEP_PARAMETERS)}, got {name!r}")
    new = copy.deepcopy(cfg)
    if name in ("c1", "c2", "c3"):
        if cfg.kind != "bump":
            raise ConfigError(f"sweep parameter {name} needs shape.kind = 'bump'")
        setattr(new.bump, name, float(value))
    elif name == "dt":
        new.run.dt = float(value)
        new.run.snapshots = []
    else:
        try:
            new.model = ModelParams(**{**new.model.__dict__, name: float(value)})
        except ValueError as err:
            raise ConfigError(f"sweep {name}={value}: {err}") from None
    return new


def sweep_files(cfg, name, values):
    rows = []
    for v in values:
        run_cfg = with_parameter(cfg, name, v)
        r = run_cfg.run
        if abs(round(r.t_end / r.dt) * r.dt - r.t_end) > 1e-9 * max(1.0, r.t_end):
            raise ConfigError(f"sweep dt={v}: t_end is not a multiple of dt")
        traj = simulate(run_cfg.shape_program(), run_cfg.model, r.t_end, r.dt, r.mode, r.sampling)
        dx, dy = traj.pose[-1, :2] - traj.pose[0, :2]
        dth = traj.theta_unwrapped[-1] - traj.theta_unwrapped[0]
        rows.append((v, abs(dx), abs(dy), dth))
    return {"sweep.csv": csv_text(("value", "net_abs_dx", "net_abs_dy", "net_dtheta"), rows)}


def _write(out_dir, files):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        with open(out / name, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    return out


def _produce(args):
    cfg = load_config(args.config)
    if args.mode:
        cfg.run.mode = args.mode
    if args.command == "simulate":
        return lambda: simulation_files(cfg, *run_simulation(cfg))
    if args.command == "purcell-scan":
        return lambda: scan_files(cfg)
    name = args.param or cfg.sweep.parameter
    values = args.values if args.values else cfg.sweep.values
    if not name or not values:
        raise ConfigError("sweep needs a parameter and at least one value "
                          "(--param/--values or the [sweep] section)")
    return lambda: sweep_files(cfg, name, values)


def build_parser():
    parser = argparse.ArgumentParser(prog="coxswim", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("simulate", "integrate the head pose for a shape program"),
                            ("purcell-scan", "rank conditions over a Purcell shape grid"),
                            ("sweep", "net displacement for a range of one parameter")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="TOML run configuration")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--seedless", action="store_true",
                       help="run twice and fail unless outputs are byte-identical")
        p.add_argument("--mode", choices=("paper", "full"), help="override run.mode")
        p.add_argument("-v", "--verbose", action="store_true")
        if name == "sweep":
            p.add_argument("--param", choices=SWEEP_PARAMETERS)
            p.add_argument("--values", type=float, nargs="+")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        produce = _produce(args)
        files = produce()
        if args.seedless and produce() != files:
            log.error("outputs differ between two identical runs")
            return EXIT_NUMERIC
        out = _write(args.out, files)
    except ConfigError as err:
        log.error("config error: %s", err)
        return EXIT_CONFIG
    except (SingularSystemError, FloatingPointError, np.linalg.LinAlgError) as err:
        log.error("numerical failure: %s", err)
        return EXIT_NUMERIC
    except ValueError as err:
        log.error("invalid input: %s", err)
        return EXIT_CONFIG
    log.info("wrote %d files to %s", len(files), out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
