"""Pressure law, growth law, and the potential-to-pressure map H.

The cell density n carries a stiff pressure p = (k/(k-1)) n^(k-1) with
stiffness exponent k > 2. Growth is a decreasing function G of the
pressure vanishing at the homeostatic pressure p_max. The map
H = (I - nu*G)^(-1) links the Brinkman potential W to the pressure inside
the growing region; q_residual(p, w) = w - p + nu*G(p) measures how far a
state is from that algebraic relation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Union

import numpy as np

__all__ = [
    "GrowthLaw",
    "LinearGrowth",
    "ModelParams",
    "pressure_of_density",
    "density_of_pressure",
    "growth",
    "h_map",
    "q_residual",
    "p_min",
]


@dataclass(frozen=True)
class GrowthLaw:
    """Growth rate G(p) with its derivative and homeostatic pressure.

    The inversion of (I - nu*G) assumes G is strictly decreasing
    (G' <= -alpha < 0 on [0, p_max]); this is not enforced here so tests
    can build degenerate laws, but `ModelParams` only ships the linear one.
    """

    g: Callable
    g_prime: Callable
    p_max: float
    linear: bool = False

    def __call__(self, p):
        return self.g(p)


def _linear_g(p_max, p):
    return p_max - p


def _linear_g_prime(p_max, p):
    return -1.0 if np.isscalar(p) else np.full_like(p, -1.0)


def LinearGrowth(p_max: float) -> GrowthLaw:
    """G(p) = p_max - p, so G' = -1 and G(p_max) = 0.

    Built from module-level functions so parameter objects stay picklable
    for process-pool sweeps.
    """
    return GrowthLaw(
        g=partial(_linear_g, p_max),
        g_prime=partial(_linear_g_prime, p_max),
        p_max=p_max,
        linear=True,
    )


@dataclass(frozen=True)
class ModelParams:
    """Scalar model parameters.

    k       stiffness exponent of the pressure law, k > 2
    nu      viscosity, nu >= 0 (nu = 0 selects the Darcy case W = p)
    p_max   homeostatic pressure, > 0
    growth  "linear" or a custom GrowthLaw instance
    """

    k: float
    nu: float = 1.0
    p_max: float = 1.0
    growth: Union[str, GrowthLaw] = "linear"
    law: GrowthLaw = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.k > 2.0:
            raise ValueError(f"k must exceed 2, got {self.k}")
        if self.nu < 0.0:
            raise ValueError(f"nu must be >= 0, got {self.nu}")
        if not self.p_max > 0.0:
            raise ValueError(f"p_max must be positive, got {self.p_max}")
        if isinstance(self.growth, GrowthLaw):
            law = self.growth
        elif self.growth == "linear":
            law = LinearGrowth(self.p_max)
        else:
            raise ValueError(f"unknown growth law {self.growth!r}")
        object.__setattr__(self, "law", law)

    @property
    def is_darcy(self) -> bool:
        return self.nu == 0.0


def pressure_of_density(n, params: ModelParams):
    """Stiff pressure law p = (k/(k-1)) n^(k-1) for n >= 0.

    Powers are taken in log space so exponents up to a few hundred neither
    overflow nor lose the tiny-density tail; n = 0 maps to exactly 0.
    """
    k = params.k
    if np.isscalar(n):
        if n < 0.0:
            raise ValueError("density must be nonnegative")
        return (k / (k - 1.0)) * math.exp((k - 1.0) * math.log(n)) if n > 0.0 else 0.0
    n_arr = np.asarray(n, dtype=float)
    if np.any(n_arr < 0.0):
        raise ValueError("density must be nonnegative")
    pos = n_arr > 0.0
    out = np.zeros_like(n_arr)
    # masked evaluation: empty cells are the common case in a front run
    out[pos] = (k / (k - 1.0)) * np.exp((k - 1.0) * np.log(n_arr[pos]))
    return out


def density_of_pressure(p, params: ModelParams):
    """Inverse pressure law n = ((k-1) p / k)^(1/(k-1)) for p >= 0."""
    k = params.k
    if np.isscalar(p):
        if p < 0.0:
            raise ValueError("pressure must be nonnegative")
        return math.exp(math.log(p * ((k - 1.0) / k)) / (k - 1.0)) if p > 0.0 else 0.0
    p_arr = np.asarray(p, dtype=float)
    if np.any(p_arr < 0.0):
        raise ValueError("pressure must be nonnegative")
    pos = p_arr > 0.0
    out = np.zeros_like(p_arr)
    out[pos] = np.exp(np.log(p_arr[pos] * ((k - 1.0) / k)) / (k - 1.0))
    return out


def growth(p, law: GrowthLaw):
    """Evaluate the growth rate G(p)."""
    return law(p)


def _invert_i_minus_nu_g(w: float, law: GrowthLaw, nu: float, tol: float = 1e-12) -> float:
    """Solve p - nu*G(p) = w by bisection then Newton polish.

    (I - nu*G)' = 1 - nu*G' > 1 for decreasing G, so the root is simple and
    the bracket [0, p_max + margin] maps monotonically onto the w-range.
    """
    phi = lambda p: p - nu * law(p)
    lo = 0.0
    if w < phi(lo) - tol:
        raise ValueError(f"w={w} below -nu*G(0)={phi(lo)}; H(w) undefined")
    hi = max(law.p_max, w)
    margin = law.p_max + abs(w) + nu * abs(law(0.0)) + 1.0
    while phi(hi) < w:
        hi += margin
        if hi > law.p_max + 10.0 * margin:
            raise ValueError(f"root of (I - nu*G)(p) = {w} not bracketed")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if phi(mid) < w:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-6:
            break
    p = 0.5 * (lo + hi)
    for _ in range(4):
        step = (phi(p) - w) / (1.0 - nu * law.g_prime(p))
        p -= step
        if abs(step) < tol:
            break
    return p


def h_map(w, params: ModelParams):
    """H(w) = (I - nu*G)^(-1)(w); increasing with H' < 1.

    The linear law has the closed form (w + nu*p_max) / (1 + nu); other laws
    go through monotone root finding to 1e-12.
    """
    law = params.law
    if law.linear:
        out = (np.asarray(w, dtype=float) + params.nu * law.p_max) / (1.0 + params.nu)
        return float(out) if np.isscalar(w) else out
    if np.isscalar(w):
        return _invert_i_minus_nu_g(float(w), law, params.nu)
    flat = np.asarray(w, dtype=float)
    return np.array([_invert_i_minus_nu_g(float(v), law, params.nu) for v in flat.ravel()]).reshape(flat.shape)


def q_residual(p, w, params: ModelParams):
    """Q = w - p + nu*G(p); zero exactly when p = H(w)."""
    return w - p + params.nu * params.law(p)


def p_min(params: ModelParams) -> float:
    """p_m = H(0), the smallest positive pressure the limit admits."""
    return float(h_map(0.0, params))
