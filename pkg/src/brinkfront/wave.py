"""Closed-form traveling wave of the incompressible (k -> infinity) limit
with linear growth, used as the oracle for front speed, profiles and the
pressure jump.

Conventions: the front sits at x = 0 in the moving frame, the growing
region occupies x < 0 (n = 1, p = H(W)) and the empty region x > 0
(n = 0, p = 0, -nu W'' + W = 0). The wave moves right at speed sigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["TravelingWave", "build_wave", "eval_profiles", "profile_arrays", "verify_wave_odes"]


@dataclass(frozen=True)
class TravelingWave:
    nu: float
    p_max: float
    w0: float      # potential at the interface
    sigma: float   # front speed
    jump: float    # pressure jump height at x = 0


def build_wave(nu: float, p_max: float) -> TravelingWave:
    """Evaluate the closed forms for a linear growth law:

    w0    = sqrt(nu) * p_max / (sqrt(nu) + sqrt(nu+1))
    sigma = p_max / (sqrt(nu) + sqrt(nu+1))
    jump  = p_max * (1 - 1/(nu + 1 + sqrt(nu (nu+1))))

    nu = 0 degenerates cleanly to sigma = p_max, jump = 0 (the continuous-
    pressure Darcy wave); its spatial profiles are not exposed.
    """
    if not p_max > 0.0:
        raise ValueError(f"p_max must be positive, got {p_max}")
    if nu < 0.0:
        raise ValueError(f"nu must be >= 0, got {nu}")
    denom = math.sqrt(nu) + math.sqrt(nu + 1.0)
    w0 = math.sqrt(nu) * p_max / denom
    sigma = p_max / denom
    jump = p_max * (1.0 - 1.0 / (nu + 1.0 + math.sqrt(nu * (nu + 1.0))))
    return TravelingWave(nu=nu, p_max=p_max, w0=w0, sigma=sigma, jump=jump)


def _check_profiles_defined(wave: TravelingWave):
    if wave.nu <= 0.0:
        raise ValueError("profiles are defined for nu > 0 only; nu = 0 exposes sigma and jump")


def profile_arrays(wave: TravelingWave, x: np.ndarray):
    """Vectorized (n, p, w) profiles in the front frame.

    x > 0: n = 0, p = 0, w = w0 e^(-x/sqrt(nu)).
    x <= 0: n = 1, w = p_max (1 - e^(x/sqrt(nu+1)) / (1 + sqrt(nu/(nu+1)))),
            p = p_max (1 - e^(x/sqrt(nu+1)) / (nu + 1 + sqrt(nu (nu+1)))).
    x = 0 carries the left limits of (n, p) and w = w0.
    """
    _check_profiles_defined(wave)
    x = np.asarray(x, dtype=float)
    nu, pm = wave.nu, wave.p_max
    right = x > 0.0
    decay_r = np.exp(-x / math.sqrt(nu), where=right, out=np.zeros_like(x))
    grow_l = np.exp(x / math.sqrt(nu + 1.0), where=~right, out=np.zeros_like(x))
    n = np.where(right, 0.0, 1.0)
    p = np.where(right, 0.0, pm * (1.0 - grow_l / (nu + 1.0 + math.sqrt(nu * (nu + 1.0)))))
    w = np.where(
        right,
        wave.w0 * decay_r,
        pm * (1.0 - grow_l / (1.0 + math.sqrt(nu / (nu + 1.0)))),
    )
    # pin the interface value exactly; the two one-sided formulas agree
    # there only to rounding
    w[x == 0.0] = wave.w0
    return n, p, w


def eval_profiles(wave: TravelingWave, x: float):
    """Pointwise (n, p, w) at front-frame position x."""
    n, p, w = profile_arrays(wave, np.array([float(x)]))
    return float(n[0]), float(p[0]), float(w[0])


def verify_wave_odes(wave: TravelingWave, dx: float) -> float:
    """Max centered-difference residual of the wave ODEs on both sides:

    -nu W'' + W = 0 on x > 0 and -nu W'' + W - H(W) = 0 on x < 0 with
    H(W) = (W + nu p_max) / (1 + nu). The exact profiles satisfy both, so
    the residual is the O(dx^2) discretization error.
    """
    _check_profiles_defined(wave)
    nu, pm = wave.nu, wave.p_max

    def fd_residual(xs, subtract_h):
        _, _, w = profile_arrays(wave, xs)
        lap = (w[:-2] - 2.0 * w[1:-1] + w[2:]) / dx ** 2
        res = -nu * lap + w[1:-1]
        if subtract_h:
            res -= (w[1:-1] + nu * pm) / (1.0 + nu)
        return np.abs(res).max()

    # sample strictly inside each side so the stencil never crosses x = 0
    xs_pos = dx + dx * np.arange(int(10.0 * math.sqrt(nu) / dx) + 3)
    xs_neg = -xs_pos[::-1]
    return max(fd_residual(xs_pos, False), fd_residual(xs_neg, True))
