"""Simulation orchestration: single runs, parameter sweeps and the
self-check battery behind `brinkfront check`.

A run directory holds snap_t*.csv, diagnostics.csv and a MANIFEST.json
whose status marks completed or aborted runs. Sweeps write one
subdirectory per axis value plus summary.csv; members are independent, so
the summary is identical for any worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np

from . import io as bio
from .config import RunConfig, SweepConfig
from .diagnostics import fit_front_speed
from .model import ModelParams
from .transport import initial_indicator_state, run

__all__ = ["RunResult", "run_single", "run_sweep", "self_check"]


@dataclass
class RunResult:
    out_dir: str
    status: str                  # "complete" or "aborted: <reason>"
    n_steps: int
    final_t: float
    max_p: float
    max_mass_residual: float
    sigma_est: float
    jump_est_final: float
    comp_residual_final: float
    osc_mid_final: float

    @property
    def ok(self) -> bool:
        return self.status == "complete"


def _summarize(records, cfg: RunConfig):
    """Speed fit over the configured window plus the final-record scalars."""
    sigma = math.nan
    ts = np.array([r.t for r in records])
    xs = np.array([r.front_pos for r in records])
    mask = (ts >= cfg.diagnostics.fit_t0) & (ts <= cfg.diagnostics.fit_t1) & np.isfinite(xs)
    if np.count_nonzero(mask) >= 3:
        sigma = fit_front_speed(ts[mask], xs[mask])
    last = records[-1]
    return sigma, last.jump_est, last.comp_residual, last.osc_mid


def run_single(cfg: RunConfig, out_dir: Optional[str] = None) -> RunResult:
    """Execute one configured run, writing snapshots, diagnostics and the
    manifest into out_dir (default: the configured output directory)."""
    directory = out_dir if out_dir is not None else cfg.out_dir
    os.makedirs(directory, exist_ok=True)
    grid = cfg.grid()
    state = initial_indicator_state(grid, cfg.model, cfg.initial_a, cfg.initial_b)
    snap_sink = bio.CsvSnapshotSink(directory)
    diag_sink = bio.CsvDiagnosticsSink(os.path.join(directory, "diagnostics.csv"))
    final, report = run(state, cfg.time, cfg.model,
                        snapshot_sink=snap_sink, diag_sink=diag_sink,
                        diag=cfg.diagnostics)
    status = "complete" if report.completed else f"aborted: {report.abort_reason}"
    sigma, jump, comp, osc = _summarize(diag_sink.records, cfg)
    result = RunResult(
        out_dir=directory, status=status, n_steps=report.n_steps,
        final_t=final.t, max_p=report.max_p,
        max_mass_residual=report.max_mass_residual,
        sigma_est=sigma, jump_est_final=jump,
        comp_residual_final=comp, osc_mid_final=osc,
    )
    bio.write_manifest(directory, {
        "status": status,
        "n_steps": report.n_steps,
        "final_t": bio.fmt(final.t),
        "max_p": bio.fmt(report.max_p),
        "max_mass_residual": bio.fmt(report.max_mass_residual),
        "sigma_est": bio.fmt(sigma),
        "snapshots": [os.path.basename(p) for p in snap_sink.paths],
    })
    return result


def _member_config(base: RunConfig, axis: str, value: float) -> RunConfig:
    if axis == "k":
        model = ModelParams(k=value, nu=base.model.nu, p_max=base.model.p_max,
                            growth=base.model.growth)
    else:
        model = ModelParams(k=base.model.k, nu=value, p_max=base.model.p_max,
                            growth=base.model.growth)
    return replace(base, model=model)


def _run_member(args) -> Tuple[float, str, RunResult]:
    base, axis, value, directory = args
    cfg = _member_config(base, axis, value)
    try:
        result = run_single(cfg, directory)
    except Exception as exc:  # a failed member must not sink the sweep
        result = RunResult(
            out_dir=directory, status=f"error: {exc}", n_steps=0,
            final_t=math.nan, max_p=math.nan, max_mass_residual=math.nan,
            sigma_est=math.nan, jump_est_final=math.nan,
            comp_residual_final=math.nan, osc_mid_final=math.nan,
        )
    return value, result.status, result


def run_sweep(cfg: SweepConfig, parallelism: int = 1,
              out_dir: Optional[str] = None) -> List[RunResult]:
    """Run one member per axis value; write summary.csv in value order.

    Members own disjoint subdirectories, so results are independent of the
    worker count and arrival order.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    root = out_dir if out_dir is not None else cfg.base.out_dir
    os.makedirs(root, exist_ok=True)
    jobs = [
        (cfg.base, cfg.axis, value, os.path.join(root, f"{cfg.axis}_{value:g}"))
        for value in cfg.values
    ]
    if parallelism == 1:
        outcomes = [_run_member(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            outcomes = list(pool.map(_run_member, jobs))

    lines = [bio.SUMMARY_HEADER]
    results = []
    for value, status, result in outcomes:
        lines.append(",".join([
            bio.fmt(value), bio.fmt(result.sigma_est), bio.fmt(result.jump_est_final),
            bio.fmt(result.comp_residual_final), bio.fmt(result.osc_mid_final),
            status,
        ]))
        results.append(result)
    with open(os.path.join(root, "summary.csv"), "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return results


def self_check() -> List[Tuple[str, bool, str]]:
    """Fast invariant battery: model algebra, wave oracle, elliptic solve
    and a short transport run. Returns (name, passed, detail) triples."""
    from .diagnostics import comp_residual
    from .elliptic import darcy_potential, kernel_weights, solve_potential
    from .grid import Field, Grid1D
    from .model import h_map, p_min, pressure_of_density, density_of_pressure, q_residual
    from .transport import SimState, mass_balance_residual, upwind_step
    from .wave import build_wave, eval_profiles, profile_arrays, verify_wave_odes

    checks: List[Tuple[str, bool, str]] = []

    def add(name, ok, detail=""):
        checks.append((name, bool(ok), detail))

    params = ModelParams(k=100.0, nu=1.0, p_max=1.0)

    # pressure law round trip
    err = max(abs(density_of_pressure(pressure_of_density(n, params), params) - n)
              for n in (0.5, 1.0, 1.1))
    add("pressure law round trip", err < 1e-12, f"max err {err:.2e}")

    # H fixed point and p_m
    h_pm = h_map(params.p_max, params)
    add("H(P_M) = P_M", abs(h_pm - params.p_max) < 1e-14, f"H(P_M) = {h_pm}")
    add("p_m = nu P_M/(1+nu)", abs(p_min(params) - 0.5) < 1e-14, f"p_m = {p_min(params)}")

    # q_residual vanishes on the graph of H
    rng = np.random.default_rng(2024)
    ws = rng.uniform(0.0, params.p_max, size=100)
    qmax = float(np.abs(q_residual(h_map(ws, params), ws, params)).max())
    add("q(H(w), w) = 0", qmax < 1e-10, f"max |q| = {qmax:.2e}")

    # traveling wave oracle
    wave = build_wave(1.0, 1.0)
    res = verify_wave_odes(wave, 1e-3)
    add("wave ODE residual < 1e-5", res < 1e-5, f"residual {res:.2e}")
    n0, p0, w0 = eval_profiles(wave, 0.0)
    add("p(0-) = H(W_0)", abs(p0 - h_map(w0, params)) < 1e-12,
        f"p(0-) = {p0}, H(W_0) = {h_map(w0, params)}")
    sigmas = [build_wave(nu, 1.0).sigma for nu in (0.0, 0.25, 1.0, 4.0)]
    add("sigma decreasing in nu", all(a > b for a, b in zip(sigmas, sigmas[1:])),
        "sigma = " + ", ".join(f"{s:.4f}" for s in sigmas))

    # elliptic: kernel mass and maximum principle
    mass = float(np.sum(kernel_weights(params, 0.01)))
    add("kernel mass = 1 +- 1e-8", abs(mass - 1.0) < 1e-8, f"mass - 1 = {mass - 1.0:.2e}")
    grid = Grid1D.from_half_width(10.0, 0.01)
    p_field = Field(rng.uniform(0.0, 2.0, grid.n_cells), grid)
    w_field = solve_potential(p_field, params)
    add("maximum principle", w_field.values.min() >= 0.0
        and w_field.values.max() <= p_field.values.max(),
        f"min W = {w_field.values.min():.3e}")
    add("darcy identity", np.array_equal(darcy_potential(p_field).values, p_field.values))

    # transport: mass balance on one step of the reference setup (coarse)
    coarse = Grid1D.from_half_width(5.0, 0.01)
    state = initial_indicator_state(coarse, params)
    stepped = upwind_step(state, 1e-4, params)
    bal = mass_balance_residual(state, stepped, 1e-4, params)
    add("one-step mass balance", bal < 1e-12, f"relative defect {bal:.2e}")
    add("positivity", stepped.n.values.min() >= 0.0,
        f"min n = {stepped.n.values.min():.2e}")
    add("wave complementarity", comp_residual(
        SimState(0.0,
                 Field(profile_arrays(wave, coarse.cell_centers())[0], coarse),
                 Field(profile_arrays(wave, coarse.cell_centers())[1], coarse),
                 Field(profile_arrays(wave, coarse.cell_centers())[2], coarse)),
        params) < 1e-10)

    return checks
