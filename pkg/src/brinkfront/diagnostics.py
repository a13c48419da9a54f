"""Measurable quantities tracking the incompressible-limit behavior:
complementarity residual, oscillation-band measures, bounds, front
position/speed and the pressure-jump estimate.

These are trend indicators evaluated on discrete states, not proofs; the
potential of the current state stands in for its limit wherever the limit
relation references it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .model import ModelParams, h_map, p_min, q_residual

__all__ = [
    "FrontAbsentError",
    "DiagnosticsConfig",
    "DiagnosticsRecord",
    "comp_residual",
    "oscillation_measures",
    "front_position",
    "front_tracking",
    "jump_estimate",
    "mass_and_bounds",
    "record_for_state",
]

FRONT_LEVEL = 0.5      # the limit density is an indicator, any level in (0,1) works
JUMP_WINDOW = 10       # cells sampled just behind the front for the jump estimate


class FrontAbsentError(RuntimeError):
    """No cell reaches the front level; front-based diagnostics undefined."""


@dataclass(frozen=True)
class DiagnosticsConfig:
    """Band widths for the oscillation measures and the speed-fit window."""

    beta1: float = 0.05
    beta2: float = 0.05
    fit_t0: float = 12.5
    fit_t1: float = 25.0


@dataclass(frozen=True)
class DiagnosticsRecord:
    t: float
    mass: float
    max_p: float
    comp_residual: float
    front_pos: float
    osc_mid: float
    osc_over: float
    jump_est: float

    FIELDS = ("t", "mass", "max_p", "comp_residual", "front_pos", "osc_mid", "osc_over", "jump_est")


def comp_residual(state, params: ModelParams) -> float:
    """k * sum_i p_i |Q_i| dx with Q = w - p + nu G(p).

    The space-time version of this quantity is uniformly bounded in k and
    vanishes in the stiff limit; the spatial slice is the per-time trend
    indicator.
    """
    p = state.p.values
    q = q_residual(p, state.w.values, params)
    return float(params.k * np.sum(p * np.abs(q)) * state.n.grid.dx)


def oscillation_measures(state, params: ModelParams, beta1: float, beta2: float) -> Tuple[float, float]:
    """Lebesgue measure of the intermediate band {beta1 <= p <= H(w) - beta2}
    and of the overshoot set {p >= H(w) + beta2}.

    beta2 must stay below p_m = H(0) for the band to separate the two limit
    values 0 and H(w).
    """
    if beta1 <= 0.0 or beta2 <= 0.0:
        raise ValueError("beta1 and beta2 must be positive")
    pm = p_min(params)
    if beta2 >= pm:
        raise ValueError(f"beta2={beta2} must be below p_m={pm}")
    p = state.p.values
    h = h_map(state.w.values, params)
    dx = state.n.grid.dx
    mid = dx * int(np.count_nonzero((p >= beta1) & (p <= h - beta2)))
    over = dx * int(np.count_nonzero(p >= h + beta2))
    return mid, over


def front_position(state) -> float:
    """Rightmost downward crossing of the front level, linearly interpolated
    between the neighboring cell centers."""
    n = state.n.values
    idx = np.nonzero(n >= FRONT_LEVEL)[0]
    if idx.size == 0:
        raise FrontAbsentError(f"no cell reaches n = {FRONT_LEVEL}")
    i = int(idx[-1])
    if i + 1 >= n.shape[0]:
        raise FrontAbsentError("front touches the domain boundary")
    centers = state.n.grid.cell_centers()
    frac = (n[i] - FRONT_LEVEL) / (n[i] - n[i + 1])
    return float(centers[i] + frac * state.n.grid.dx)


def front_tracking(snapshots: Sequence, fit_window: Tuple[float, float]):
    """Front positions of the given states and the least-squares speed over
    the fit window. Needs at least 3 states inside the window."""
    times = np.array([s.t for s in snapshots])
    positions = np.array([front_position(s) for s in snapshots])
    t0, t1 = fit_window
    mask = (times >= t0) & (times <= t1)
    if np.count_nonzero(mask) < 3:
        raise ValueError(f"need >= 3 snapshots inside the fit window {fit_window}")
    sigma_est = fit_front_speed(times[mask], positions[mask])
    return times, positions, sigma_est


def fit_front_speed(times: np.ndarray, positions: np.ndarray) -> float:
    """Least-squares slope of position against time."""
    a = np.vstack([times, np.ones_like(times)]).T
    slope, _ = np.linalg.lstsq(a, positions, rcond=None)[0]
    return float(slope)


def jump_estimate(state) -> float:
    """Max pressure over the JUMP_WINDOW interior cells immediately behind
    the front, estimating p(0-); equals the jump height since p = 0 ahead.

    The cell containing the crossing itself straddles the interface and is
    still filling (its pressure underflows while n < 1), so the window
    starts at the first cell wholly on the interior side.
    """
    pos = front_position(state)
    grid = state.n.grid
    i = int((pos - grid.x_min) / grid.dx - 0.5)
    i = min(max(i, 0), grid.n_cells - 1)
    lo = max(0, i - JUMP_WINDOW)
    hi = max(i, 1)
    return float(state.p.values[lo:hi].max())


def mass_and_bounds(state) -> Tuple[float, float, float]:
    """(total mass, max pressure, min density)."""
    dx = state.n.grid.dx
    return (
        float(np.sum(state.n.values) * dx),
        float(state.p.values.max()),
        float(state.n.values.min()),
    )


def record_for_state(state, params: ModelParams, diag: DiagnosticsConfig) -> DiagnosticsRecord:
    """Assemble the per-step record; front-based entries degrade to NaN when
    no front exists, the oscillation bands to NaN when p_m = 0 (nu = 0)."""
    mass, max_p, _ = mass_and_bounds(state)
    comp = comp_residual(state, params)
    try:
        front = front_position(state)
        jump = jump_estimate(state)
    except FrontAbsentError:
        front = math.nan
        jump = math.nan
    if params.nu > 0.0 and diag.beta2 < p_min(params):
        osc_mid, osc_over = oscillation_measures(state, params, diag.beta1, diag.beta2)
    else:
        osc_mid = osc_over = math.nan
    return DiagnosticsRecord(
        t=state.t, mass=mass, max_p=max_p, comp_residual=comp,
        front_pos=front, osc_mid=osc_mid, osc_over=osc_over, jump_est=jump,
    )
