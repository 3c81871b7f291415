"""INI-format experiment configuration: parsing, validation, derived-quantity echo.

Physical keys carry the same names as the model symbols: eps1, eps2, K,
gamma1, gamma2, T1, T2, gamma0, p0, p1, p2, c12_re, c12_im.  A config has
sections [model], [initial] (time-series runs only), [run] and [output].
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SpinBathError
from .model import ModelParams, Rates, eigensystem, rates
from .states import InitialState

MODES = ("markov", "postmarkov", "oracle")
DEFAULT_ORACLE_STEP = 0.002


class ConfigError(SpinBathError, ValueError):
    """Carries every problem found while validating a config file."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class TimeSeriesRun:
    t_max: float
    n_points: int
    spacing: str = "linear"  # or "log"
    t_min: float = 0.0


@dataclass(frozen=True)
class SweepRun:
    tm_min: float
    tm_max: float
    tm_count: int
    dt_min: float
    dt_max: float
    dt_count: int


@dataclass(frozen=True)
class ExperimentConfig:
    model: ModelParams
    run: TimeSeriesRun | SweepRun
    mode: str
    out: str
    initial: InitialState | None = None
    gamma0: float | None = None
    step: float = DEFAULT_ORACLE_STEP
    threads: int = 1


_MODEL_KEYS = ("eps1", "eps2", "K", "gamma1", "gamma2")
_TEMP_KEYS = ("T1", "T2")
_SWEEP_KEYS = ("tm_min", "tm_max", "tm_count", "dt_min", "dt_max", "dt_count")


def _get_float(section, key, problems, where):
    raw = section.get(key)
    if raw is None:
        problems.append(f"[{where}] missing required key '{key}'")
        return None
    try:
        return float(raw)
    except ValueError:
        problems.append(f"[{where}] key '{key}' is not a number: {raw!r}")
        return None


def _get_int(section, key, problems, where):
    v = _get_float(section, key, problems, where)
    if v is None:
        return None
    if v != int(v):
        problems.append(f"[{where}] key '{key}' must be an integer, got {v}")
        return None
    return int(v)


def load_config(path: str, *, mode: str | None = None, out: str | None = None,
                threads: int | None = None) -> ExperimentConfig:
    """Parse and validate a config file; CLI overrides win over file values.

    Raises ConfigError listing every missing or invalid field.
    """
    parser = configparser.ConfigParser()
    read = parser.read(path)
    problems: list[str] = []
    if not read:
        raise ConfigError([f"cannot read config file {path!r}"])

    for sec in ("model", "run"):
        if not parser.has_section(sec):
            problems.append(f"missing required section [{sec}]")
    if problems:
        problems.append(
            "required fields: [model] eps1 eps2 K gamma1 gamma2 (T1 T2 for time series); "
            "[run] kind mode t_max n_points | tm/dt ranges; [output] path"
        )
        raise ConfigError(problems)

    msec = parser["model"]
    rsec = parser["run"]

    kind = rsec.get("kind")
    if kind not in ("timeseries", "sweep"):
        problems.append(f"[run] kind must be 'timeseries' or 'sweep', got {kind!r}")

    run_mode = mode or rsec.get("mode")
    if kind == "sweep":
        run_mode = run_mode or "markov"  # steady state is mode-independent
    if run_mode not in MODES:
        problems.append(f"[run] mode must be one of {MODES}, got {run_mode!r}")

    vals = {k: _get_float(msec, k, problems, "model") for k in _MODEL_KEYS}
    need_temps = kind == "timeseries"
    temps = {}
    for k in _TEMP_KEYS:
        if msec.get(k) is not None or need_temps:
            temps[k] = _get_float(msec, k, problems, "model")
        else:
            temps[k] = 1.0  # placeholder; sweeps set temperatures per grid point

    model = None
    if not problems:
        try:
            model = ModelParams(
                eps1=vals["eps1"], eps2=vals["eps2"], K=vals["K"],
                gamma1=vals["gamma1"], gamma2=vals["gamma2"],
                T1=temps["T1"], T2=temps["T2"],
            )
            eigensystem(model)
        except SpinBathError as exc:
            problems.append(f"[model] {exc}")

    initial = None
    if kind == "timeseries":
        if not parser.has_section("initial"):
            problems.append("missing section [initial] (required for time-series runs)")
        else:
            isec = parser["initial"]
            p0 = _get_float(isec, "p0", problems, "initial")
            p1 = _get_float(isec, "p1", problems, "initial")
            p2 = _get_float(isec, "p2", problems, "initial")
            c_re = float(isec.get("c12_re", 0.0))
            c_im = float(isec.get("c12_im", 0.0))
            if None not in (p0, p1, p2):
                try:
                    initial = InitialState(p0=p0, p1=p1, p2=p2, c12=complex(c_re, c_im))
                except SpinBathError as exc:
                    problems.append(f"[initial] {exc}")

    run: TimeSeriesRun | SweepRun | None = None
    if kind == "timeseries":
        t_max = _get_float(rsec, "t_max", problems, "run")
        n_points = _get_int(rsec, "n_points", problems, "run")
        spacing = rsec.get("spacing", "linear")
        t_min = float(rsec.get("t_min", 0.0))
        if spacing not in ("linear", "log"):
            problems.append(f"[run] spacing must be 'linear' or 'log', got {spacing!r}")
        if spacing == "log" and t_min <= 0:
            problems.append("[run] logarithmic spacing requires t_min > 0")
        if t_max is not None and t_max < 0:
            problems.append(f"[run] t_max must be >= 0, got {t_max}")
        if n_points is not None and n_points < 1:
            problems.append(f"[run] n_points must be >= 1, got {n_points}")
        if not problems:
            run = TimeSeriesRun(t_max=t_max, n_points=n_points, spacing=spacing, t_min=t_min)
    elif kind == "sweep":
        sv = {k: _get_float(rsec, k, problems, "run") for k in _SWEEP_KEYS}
        if None not in sv.values():
            for ck in ("tm_count", "dt_count"):
                if sv[ck] < 1 or sv[ck] != int(sv[ck]):
                    problems.append(f"[run] {ck} must be a positive integer, got {sv[ck]}")
            if sv["tm_max"] < sv["tm_min"] or sv["dt_max"] < sv["dt_min"]:
                problems.append("[run] sweep ranges must have max >= min")
            if not problems:
                run = SweepRun(
                    tm_min=sv["tm_min"], tm_max=sv["tm_max"], tm_count=int(sv["tm_count"]),
                    dt_min=sv["dt_min"], dt_max=sv["dt_max"], dt_count=int(sv["dt_count"]),
                )

    gamma0 = None
    if run_mode == "postmarkov":
        if rsec.get("gamma0") is None:
            problems.append("[run] mode 'postmarkov' requires gamma0")
        else:
            gamma0 = _get_float(rsec, "gamma0", problems, "run")
            if gamma0 is not None and gamma0 <= 0:
                problems.append(f"[run] gamma0 must be positive, got {gamma0}")

    step = float(rsec.get("step", DEFAULT_ORACLE_STEP))
    if step <= 0:
        problems.append(f"[run] step must be positive, got {step}")

    out_path = out or (parser.get("output", "path", fallback=None))
    if not out_path:
        problems.append("missing output path: provide [output] path or --out")

    n_threads = threads if threads is not None else int(rsec.get("threads", 1))
    if n_threads < 1:
        problems.append(f"threads must be >= 1, got {n_threads}")

    if problems:
        raise ConfigError(problems)
    return ExperimentConfig(
        model=model, run=run, mode=run_mode, out=out_path, initial=initial,
        gamma0=gamma0, step=step, threads=n_threads,
    )


def time_grid(run: TimeSeriesRun) -> np.ndarray:
    if run.n_points == 1:
        return np.array([run.t_max])
    if run.spacing == "log":
        return np.geomspace(run.t_min, run.t_max, run.n_points)
    return np.linspace(0.0, run.t_max, run.n_points)


def describe(cfg: ExperimentConfig) -> str:
    """Echo the parsed config plus the derived spectrum and rates."""
    m = cfg.model
    lines = [
        "model:",
        f"  eps1 = {m.eps1:g}   eps2 = {m.eps2:g}   K = {m.K:g}",
        f"  gamma1 = {m.gamma1:g}   gamma2 = {m.gamma2:g}",
    ]
    es = eigensystem(m)
    lines += [
        "derived:",
        f"  kappa  = {es.kappa:.10g}",
        f"  theta  = {es.theta:.10g}",
        f"  omega1 = {es.omega1:.10g}",
        f"  omega2 = {es.omega2:.10g}",
    ]
    if isinstance(cfg.run, TimeSeriesRun):
        lines.insert(3, f"  T1 = {m.T1:g}   T2 = {m.T2:g}")
        r = rates(es, m)
        lines += [
            "rates:",
            f"  x_plus = {r.x_plus:.10g}   x_minus = {r.x_minus:.10g}   (omega2 channel)",
            f"  y_plus = {r.y_plus:.10g}   y_minus = {r.y_minus:.10g}   (omega1 channel)",
        ]
        i = cfg.initial
        lines += [
            "initial:",
            f"  p0 = {i.p0:g}   p1 = {i.p1:g}   p2 = {i.p2:g}   p3 = {i.p3:g}   c12 = {i.c12:g}",
            "run:",
            f"  timeseries   mode = {cfg.mode}   t_max = {cfg.run.t_max:g}"
            f"   n_points = {cfg.run.n_points}   spacing = {cfg.run.spacing}",
        ]
    else:
        r = cfg.run
        lines += [
            "run:",
            f"  sweep   T_M in [{r.tm_min:g}, {r.tm_max:g}] x {r.tm_count}"
            f"   dT in [{r.dt_min:g}, {r.dt_max:g}] x {r.dt_count}",
        ]
    if cfg.gamma0 is not None:
        lines.append(f"  gamma0 = {cfg.gamma0:g}")
    lines.append(f"output: {cfg.out}")
    return "\n".join(lines)
