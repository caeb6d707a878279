"""Run configuration: a versioned TOML file with nested sections.

Example::

    schema_version = 1

    [model]
    h = 0.01
    delta = 0.05

    [run]
    t_end = 15.0
    dt = 0.01

    [shape]
    kind = "bump"

    [shape.bump]
    c1 = 1e6
"""

from dataclasses import dataclass, field, asdict
import math
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .geometry import ModelParams
from .shapes import (BumpParams, BumpProgram, PurcellProgram, TabulatedProgram,
                     sinusoid, square_loop)

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Invalid or unreadable configuration."""


@dataclass
class _ModelSection:
    h: float = 0.01
    delta: float = 0.05
    beta: float = 0.5
    order: int = 2
    n_quad: int = 200


@dataclass
class BumpSection:
    c1: float = 1e6
    c2: float = 15.0
    c3: float = 1.0 / 15.0
    n_samples: int = 201


@dataclass
class PurcellSection:
    gait: str = "sinusoid"
    amplitude1: float = 1.0
    amplitude2: float = 1.0
    frequency: float = 0.25
    phase: float = math.pi / 2
    offset1: float = 0.0
    offset2: float = 0.0
    side: float = 0.5
    fractions: list = field(default_factory=lambda: [1 / 3, 1 / 3, 1 / 3])
    samples_per_link: int = 2


@dataclass
class TabulatedSection:
    path: str = ""


@dataclass
class RunSection:
    t_end: float = 15.0
    dt: float = 0.01
    mode: str = "paper"
    sampling: str = "left"
    snapshots: list = field(default_factory=lambda: [0.0, 3.0, 6.0, 9.0, 12.0, 15.0])


@dataclass
class ScanSection:
    alpha1_min: float = -2.5
    alpha1_max: float = 2.5
    n1: int = 21
    alpha2_min: float = -2.5
    alpha2_max: float = 2.5
    n2: int = 21
    rank_rtol: float = 1e-8


@dataclass
class SweepSection:
    parameter: str = ""
    values: list = field(default_factory=list)


@dataclass
class RunConfig:
    model: ModelParams = field(default_factory=ModelParams)
    run: RunSection = field(default_factory=RunSection)
    kind: str = "bump"
    bump: BumpSection = field(default_factory=BumpSection)
    purcell: PurcellSection = field(default_factory=PurcellSection)
    tabulated: TabulatedSection = field(default_factory=TabulatedSection)
    scan: ScanSection = field(default_factory=ScanSection)
    sweep: SweepSection = field(default_factory=SweepSection)
    base_dir: Path = field(default_factory=Path.cwd)

    def to_dict(self):
        d = {"schema_version": SCHEMA_VERSION,
             "model": asdict(self.model),
             "run": asdict(self.run),
             "shape": {"kind": self.kind, self.kind: asdict(getattr(self, self.kind))},
             "scan": asdict(self.scan)}
        if self.sweep.parameter:
            d["sweep"] = asdict(self.sweep)
        return d

    def shape_program(self):
        if self.kind == "bump":
            b = self.bump
            return BumpProgram(BumpParams(b.c1, b.c2, b.c3), n_samples=b.n_samples)
        if self.kind == "purcell":
            p = self.purcell
            if p.gait == "sinusoid":
                paths = (sinusoid(p.amplitude1, p.frequency, 0.0, p.offset1),
                         sinusoid(p.amplitude2, p.frequency, p.phase, p.offset2))
            else:
                paths = square_loop((p.offset1, p.offset2), p.side, 1.0 / p.frequency)
            return PurcellProgram(*paths, fractions=tuple(p.fractions),
                                  samples_per_link=p.samples_per_link)
        path = Path(self.tabulated.path)
        if not path.is_absolute():
            path = self.base_dir / path
        try:
            return TabulatedProgram.from_csv(path)
        except OSError as err:
            raise ConfigError(f"shape.tabulated.path: cannot read {path}: {err}") from None
        except ValueError as err:
            raise ConfigError(f"shape.tabulated.path: {err}") from None


def _fill(section_obj, table, prefix):
    if not isinstance(table, dict):
        raise ConfigError(f"[{prefix}] must be a table")
    known = set(section_obj.__dataclass_fields__)
    for key, value in table.items():
        if key not in known:
            raise ConfigError(f"unknown key '{prefix}.{key}'")
        default = getattr(section_obj, key)
        setattr(section_obj, key, _coerce(value, default, f"{prefix}.{key}"))
    return section_obj


def _coerce(value, default, key):
    if isinstance(default, bool) or isinstance(value, bool):
        raise ConfigError(f"{key}: booleans are not accepted")
    if isinstance(default, int):
        if not isinstance(value, int):
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        return value
    if isinstance(default, float):
        if not isinstance(value, (int, float)):
            raise ConfigError(f"{key}: expected a number, got {value!r}")
        return float(value)
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigError(f"{key}: expected a string, got {value!r}")
        return value
    if isinstance(default, list):
        if not isinstance(value, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            raise ConfigError(f"{key}: expected a list of numbers")
        return [float(v) for v in value]
    raise ConfigError(f"{key}: unsupported value {value!r}")


def parse_config(data, base_dir=None):
    """Build a :class:`RunConfig` from an already-parsed mapping."""
    data = dict(data)
    version = data.pop("schema_version", None)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version: expected {SCHEMA_VERSION}, got {version!r}")
    cfg = RunConfig(base_dir=Path(base_dir) if base_dir else Path.cwd())
    model = _fill(_ModelSection(), data.pop("model", {}), "model")
    try:
        cfg.model = ModelParams(**asdict(model))
    except ValueError as err:
        raise ConfigError(f"model: {err}") from None
    _fill(cfg.run, data.pop("run", {}), "run")
    _fill(cfg.scan, data.pop("scan", {}), "scan")
    _fill(cfg.sweep, data.pop("sweep", {}), "sweep")
    shape = dict(data.pop("shape", {}))
    kind = shape.pop("kind", "bump")
    if kind not in ("bump", "purcell", "tabulated"):
        raise ConfigError(f"shape.kind: expected bump, purcell or tabulated, got {kind!r}")
    cfg.kind = kind
    for name in ("bump", "purcell", "tabulated"):
        if name in shape:
            _fill(getattr(cfg, name), shape.pop(name), f"shape.{name}")
    for key in shape:
        raise ConfigError(f"unknown key 'shape.{key}'")
    for key in data:
        raise ConfigError(f"unknown key '{key}'")
    _check(cfg)
    return cfg


def _check(cfg):
    r = cfg.run
    if r.mode not in ("paper", "full"):
        raise ConfigError(f"run.mode: expected 'paper' or 'full', got {r.mode!r}")
    if r.sampling not in ("left", "midpoint"):
        raise ConfigError(f"run.sampling: expected 'left' or 'midpoint', got {r.sampling!r}")
    if not (r.t_end > 0 and r.dt > 0):
        raise ConfigError("run.t_end and run.dt must be positive")
    n = round(r.t_end / r.dt)
    if abs(n * r.dt - r.t_end) > 1e-9 * max(1.0, r.t_end):
        raise ConfigError("run.t_end must be an integer multiple of run.dt")
    for t in r.snapshots:
        k = round(t / r.dt)
        if not (0 <= k <= n) or abs(k * r.dt - t) > 1e-9 * max(1.0, r.t_end):
            raise ConfigError(f"run.snapshots: {t} is not a time step in [0, t_end]")
    try:
        BumpParams(cfg.bump.c1, cfg.bump.c2, cfg.bump.c3)
    except ValueError as err:
        raise ConfigError(f"shape.bump: {err}") from None
    if cfg.bump.n_samples < 3:
        raise ConfigError("shape.bump.n_samples must be at least 3")
    p = cfg.purcell
    if p.gait not in ("sinusoid", "square"):
        raise ConfigError(f"shape.purcell.gait: expected 'sinusoid' or 'square', got {p.gait!r}")
    if not p.frequency > 0:
        raise ConfigError("shape.purcell.frequency must be positive")
    if len(p.fractions) != 3 or min(p.fractions) <= 0 or abs(sum(p.fractions) - 1) > 1e-9:
        raise ConfigError("shape.purcell.fractions: need three positive values summing to 1")
    if cfg.kind == "tabulated" and not cfg.tabulated.path:
        raise ConfigError("shape.tabulated.path is required for kind = 'tabulated'")
    s = cfg.scan
    if s.n1 < 1 or s.n2 < 1:
        raise ConfigError("scan.n1 and scan.n2 must be at least 1")
    for lo, hi, name in ((s.alpha1_min, s.alpha1_max, "alpha1"), (s.alpha2_min, s.alpha2_max, "alpha2")):
        if not (-math.pi < lo <= hi < math.pi):
            raise ConfigError(f"scan.{name} range must lie inside (-pi, pi)")


def load_config(path):
    """Read and validate a TOML run configuration."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as err:
        raise ConfigError(f"{path}: {err.strerror}") from None
    except tomllib.TOMLDecodeError as err:
        raise ConfigError(f"{path}: {err}") from None
    return parse_config(data, path.parent)


def scan_grid(scan):
    return (np.linspace(scan.alpha1_min, scan.alpha1_max, scan.n1),
            np.linspace(scan.alpha2_min, scan.alpha2_max, scan.n2))
