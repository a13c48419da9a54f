"""Numpy implementations of the stepping kernels.

Mirrors the compiled extension `_kernels` operation for operation; selected
at import time by `backend` when the extension is not built (or when
BRINKFRONT_PURE_PYTHON is set). Expressions follow the same evaluation
order as the compiled loops, so the two backends agree to the last ulp.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded

DENSITY_FLOOR = 1e-300
NEGATIVE_DENSITY_TOL = -1e-14
SPAN_EPS = 1e-12


class TridiagSolver:
    """Prefactored solve of the symmetric tridiagonal system
    (diag_i on the diagonal, a constant `off` on both off-diagonals).

    The matrix of the screened Poisson solve is SPD for nu > 0, so a banded
    Cholesky factorization is taken once and reused every step.
    """

    def __init__(self, diag: np.ndarray, off: float):
        n = diag.shape[0]
        ab = np.zeros((2, n))
        ab[0, 1:] = off
        ab[1, :] = diag
        self._cho = cholesky_banded(ab)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return cho_solve_banded((self._cho, False), rhs)


def face_velocities(w: np.ndarray, dx: float, nu: float) -> np.ndarray:
    """u_{i+1/2} = -(w_{i+1} - w_i)/dx at interior faces.

    Outer faces close with the decay-matched Robin velocity +-w/sqrt(nu);
    for nu = 0 they are zero (the density is compactly supported away from
    the boundary in every supported configuration).
    """
    n = w.shape[0]
    u = np.empty(n + 1)
    u[1:-1] = (w[:-1] - w[1:]) / dx
    if nu > 0.0:
        s = np.sqrt(nu)
        u[0] = -w[0] / s
        u[-1] = w[-1] / s
    else:
        u[0] = 0.0
        u[-1] = 0.0
    return u


def step_transport(n, g, w, dt, dx, nu, u_buf=None, f_buf=None):
    """One explicit donor-cell update of the density.

    Returns (n_new, flux_left, flux_right, min_n_raw, max_abs_u). min_n_raw
    is the most negative density before flushing values below DENSITY_FLOOR
    to zero (0.0 when none went negative); the caller decides whether it is
    a scheme error. The pressure law is applied by the caller (vectorized
    numpy either way). u_buf/f_buf are optional (m+1) scratch arrays a
    stepping loop can reuse to avoid per-step allocations.
    """
    m = n.shape[0]
    u = u_buf if u_buf is not None else np.empty(m + 1)
    u[1:-1] = (w[:-1] - w[1:]) / dx
    if nu > 0.0:
        s = np.sqrt(nu)
        u[0] = -w[0] / s
        u[-1] = w[-1] / s
    else:
        u[0] = 0.0
        u[-1] = 0.0
    ui = u[1:-1]
    full = f_buf if f_buf is not None else np.empty(m + 1)
    full[1:-1] = np.where(ui >= 0.0, ui * n[:-1], ui * n[1:])
    flux_left = u[0] * n[0] if u[0] < 0.0 else 0.0
    flux_right = u[-1] * n[-1] if u[-1] >= 0.0 else 0.0
    full[0] = flux_left
    full[-1] = flux_right
    r = dt / dx
    n_new = n - r * (full[1:] - full[:-1]) + dt * n * g
    min_n_raw = float(min(0.0, n_new.min()))
    n_new[n_new < DENSITY_FLOOR] = 0.0
    return n_new, flux_left, flux_right, min_n_raw, float(np.abs(u).max())


def advance_span(n, p, w, t, t_target, dx, nu, k, p_max, cfl, dt_max, tri):
    """Advance the linear-growth system from t to t_target.

    Mirror of the compiled span runner: per-step time-step bound,
    donor-cell update, pressure law, potential solve (tri for nu > 0, the
    Darcy identity otherwise) and mass-balance bookkeeping.

    Returns (n, p, w, t, steps, max_p_seen, max_balance, status,
    min_raw_bad): status 0 on success, 1 for a negative density beyond
    tolerance, 2 for a non-finite pressure; on failure the arrays and t
    are the last good state.
    """
    m = n.shape[0]
    n, p, w = n.copy(), p.copy(), w.copy()
    u_buf = np.empty(m + 1)
    f_buf = np.empty(m + 1)
    relax_num = cfl * (nu + 0.5 * dx * dx)
    relax_fac = (k - 1.0) * max(1.0, nu)  # |G'(0)| = 1, linear law
    growth_bound = cfl / p_max            # |G(0)| = p_max
    coef = k / (k - 1.0)
    steps = 0
    max_p_seen = 0.0
    max_balance = 0.0
    status = 0
    min_raw_bad = 0.0
    mass_cur = float(np.sum(n)) * dx

    while t < t_target - SPAN_EPS:
        max_p_cur = float(p.max())
        max_u = float(np.abs(face_velocities(w, dx, nu)).max())
        dt = dt_max
        if max_p_cur > 0.0:
            dt = min(dt, relax_num / (relax_fac * max_p_cur))
        dt = min(dt, growth_bound, t_target - t)
        if max_u > 0.0:
            dt = min(dt, cfl * dx / max_u)
        g = p_max - p
        n_new, fl, fr, min_raw, _ = step_transport(n, g, w, dt, dx, nu, u_buf, f_buf)
        growth_int = float(np.sum(n * g)) * dx
        if min_raw < NEGATIVE_DENSITY_TOL:
            status = 1
            min_raw_bad = min_raw
            break
        pos = n_new > 0.0
        p_new = np.zeros(m)
        p_new[pos] = coef * np.exp((k - 1.0) * np.log(n_new[pos]))
        max_p_next = float(p_new.max()) if m else 0.0
        if not np.isfinite(max_p_next):
            status = 2
            break
        w_new = tri.solve(p_new) if nu > 0.0 else p_new.copy()
        mass_next = float(np.sum(n_new)) * dx
        defect = abs(mass_next - mass_cur - dt * (growth_int - (fr - fl)))
        max_balance = max(max_balance, defect / max(mass_cur, 1e-300))
        mass_cur = mass_next
        max_p_seen = max(max_p_seen, max_p_next)
        n, p, w = n_new, p_new, w_new
        t = t + dt
        if abs(t - t_target) <= SPAN_EPS:
            t = t_target
        steps += 1

    return n, p, w, t, steps, max_p_seen, max_balance, status, min_raw_bad
