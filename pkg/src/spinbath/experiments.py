"""Experiment orchestration: time-series and steady-state-sweep CSV emission.

Outputs are fully deterministic: no randomness anywhere, numbers printed
with 17 significant digits in lowercase scientific notation, rows emitted
in grid order regardless of the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import ExperimentConfig, SweepRun, TimeSeriesRun, time_grid
from .entanglement import wootters_concurrence
from .errors import NumericalFailure, SpinBathError
from .markov import MarkovPropagator, steady_state_concurrence
from .model import ModelParams, eigensystem, rates
from .oracle import build_lindbladian, integrate_markov
from .postmarkov import PostMarkovPropagator
from .states import COMPUTATIONAL, DensityMatrix, initial_density, to_computational, to_eigen

TIMESERIES_HEADER = "t,C,rho11,rho22,rho33,rho44,re_rho34_eigen,im_rho34_eigen"
SWEEP_HEADER = "T_M,dT,C_inf"


def _fmt(v: float) -> str:
    return f"{v:.16e}"


def _check_state(rho_c, t: float) -> None:
    try:
        rho_c.validate()
    except SpinBathError as exc:
        raise NumericalFailure(f"state at t = {t:g} violates invariants: {exc}") from exc


def _analytic_propagator(cfg: ExperimentConfig):
    es = eigensystem(cfg.model)
    r = rates(es, cfg.model)
    if cfg.mode == "markov":
        return MarkovPropagator(rates=r, es=es), es
    return PostMarkovPropagator.build(es, r, cfg.gamma0), es


def _timeseries_rows(cfg: ExperimentConfig) -> list[str]:
    grid = time_grid(cfg.run)
    rho0_c = initial_density(cfg.initial)

    if cfg.mode == "oracle":
        es = eigensystem(cfg.model)
        superop = build_lindbladian(cfg.model, es)
        traj = integrate_markov(superop, to_eigen(rho0_c, es), grid, step=cfg.step, es=es)
        rows = []
        for i, t in enumerate(traj.times):
            _check_state(DensityMatrix(traj.states[i], COMPUTATIONAL), t)
            p = traj.populations_eigen[i]
            c34 = traj.coherence_eigen[i]
            rows.append(
                ",".join(
                    [_fmt(t), _fmt(traj.concurrence[i])]
                    + [_fmt(x) for x in p]
                    + [_fmt(c34.real), _fmt(c34.imag)]
                )
            )
        return rows

    prop, es = _analytic_propagator(cfg)
    rho0_e = to_eigen(rho0_c, es)

    def row_at(t: float) -> str:
        rho_e = prop.propagate(rho0_e, float(t))
        rho_c = to_computational(rho_e, es)
        _check_state(rho_c, t)
        conc = wootters_concurrence(rho_c).value
        p = np.real(np.diag(rho_e.matrix))
        c34 = rho_e.matrix[2, 3]
        return ",".join(
            [_fmt(float(t)), _fmt(conc)]
            + [_fmt(x) for x in p]
            + [_fmt(c34.real), _fmt(c34.imag)]
        )

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            return list(pool.map(row_at, grid))  # map preserves grid order
    return [row_at(t) for t in grid]


def _sweep_point(model: ModelParams, tm: float, dt: float) -> str:
    t1 = tm + dt / 2
    t2 = tm - dt / 2
    if t1 <= 0 or t2 <= 0:
        return ""  # infeasible grid point: empty cell, not an error
    params = ModelParams(
        eps1=model.eps1, eps2=model.eps2, K=model.K,
        gamma1=model.gamma1, gamma2=model.gamma2, T1=t1, T2=t2,
    )
    es = eigensystem(params)
    prop = MarkovPropagator(rates=rates(es, params), es=es)
    return _fmt(steady_state_concurrence(prop))


def _sweep_rows(cfg: ExperimentConfig) -> list[str]:
    run: SweepRun = cfg.run
    tms = np.linspace(run.tm_min, run.tm_max, run.tm_count)
    dts = np.linspace(run.dt_min, run.dt_max, run.dt_count)
    points = [(tm, dt) for tm in tms for dt in dts]  # row-major: T_M outer

    def cell(point) -> str:
        return _sweep_point(cfg.model, *point)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            cells = list(pool.map(cell, points))
    else:
        cells = [cell(p) for p in points]
    return [
        f"{_fmt(tm)},{_fmt(dt)},{c}" for (tm, dt), c in zip(points, cells)
    ]


def _write(path: str, header: str, rows: list[str]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(row + "\n")


def run_timeseries(cfg: ExperimentConfig) -> str:
    """Evolve the configured initial state and write one CSV row per grid time."""
    if not isinstance(cfg.run, TimeSeriesRun):
        raise SpinBathError("run_timeseries called with a sweep config")
    _write(cfg.out, TIMESERIES_HEADER, _timeseries_rows(cfg))
    return cfg.out


def run_sweep(cfg: ExperimentConfig) -> str:
    """Steady-state concurrence over the (T_M, dT) grid, long CSV format.

    The steady state does not depend on the memory kernel, so sweeps are
    mode-independent.  Infeasible points (a bath temperature <= 0) get an
    empty C_inf cell.
    """
    if not isinstance(cfg.run, SweepRun):
        raise SpinBathError("run_sweep called with a time-series config")
    _write(cfg.out, SWEEP_HEADER, _sweep_rows(cfg))
    return cfg.out
