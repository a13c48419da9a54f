"""Compiled extension vs numpy fallback: the two kernel implementations
must agree operation for operation."""

import os
import subprocess
import sys

import numpy as np
import pytest

from brinkfront import _kernels_py as kp
from brinkfront.backend import backend_name

kc = pytest.importorskip("brinkfront._kernels", reason="compiled extension not built")


def random_state(m, seed):
    rng = np.random.default_rng(seed)
    n = rng.uniform(0.0, 1.0, m)
    n[rng.uniform(size=m) < 0.4] = 0.0  # realistic empty stretches
    g = 1.0 - rng.uniform(0.0, 1.2, m)
    w = rng.uniform(0.0, 0.8, m)
    return n, g, w


@pytest.mark.parametrize("m,seed", [(64, 0), (1000, 1), (20001, 2)])
def test_face_velocities_bitwise(m, seed):
    _, _, w = random_state(m, seed)
    for nu in (0.0, 0.5, 1.0):
        assert np.array_equal(kc.face_velocities(w, 1e-3, nu),
                              kp.face_velocities(w, 1e-3, nu))


@pytest.mark.parametrize("m,seed", [(64, 3), (1000, 4), (20001, 5)])
def test_step_transport_bitwise(m, seed):
    n, g, w = random_state(m, seed)
    for nu in (0.0, 1.0):
        out_c = kc.step_transport(n, g, w, 1e-4, 1e-3, nu)
        out_p = kp.step_transport(n, g, w, 1e-4, 1e-3, nu)
        assert np.array_equal(out_c[0], out_p[0])
        assert out_c[1:] == out_p[1:]


def test_tridiag_solvers_agree():
    rng = np.random.default_rng(9)
    m = 5000
    c = 1.0 / 1e-4
    diag = np.full(m, 1.0 + 2.0 * c)
    diag[0] -= 0.3 * c
    diag[-1] -= 0.3 * c
    rhs = rng.uniform(0.0, 1.0, m)
    xc = kc.TridiagSolver(diag, -c).solve(rhs)
    xp = kp.TridiagSolver(diag, -c).solve(rhs)
    # different factorizations (LU sweeps vs banded Cholesky)
    assert np.abs(xc - xp).max() < 1e-9
    # both actually solve the system
    for x in (xc, xp):
        res = diag * x
        res[:-1] += -c * x[1:]
        res[1:] += -c * x[:-1]
        assert np.abs(res - rhs).max() < 1e-9


@pytest.mark.parametrize("nu", [0.0, 1.0])
def test_advance_span_agreement(nu):
    # short span: only exp/log ulp differences can accumulate
    m = 400
    dx = 0.02
    x = -4.0 + (np.arange(m) + 0.5) * dx
    n = np.clip(np.minimum(0.2, x + 0.2) - np.maximum(-0.2, x - 0.2), 0.0, None) / dx
    k, p_max = 100.0, 1.0
    p = np.zeros(m)
    p[n > 0] = (k / (k - 1.0)) * np.exp((k - 1.0) * np.log(n[n > 0]))
    tri_c = tri_p = None
    if nu > 0.0:
        c = nu / dx ** 2
        delta = dx ** 2 / nu
        lam = 1.0 + 0.5 * delta + np.sqrt(delta + 0.25 * delta ** 2)
        diag = np.full(m, 1.0 + 2.0 * c)
        diag[0] -= c / lam
        diag[-1] -= c / lam
        tri_c = kc.TridiagSolver(diag, -c)
        tri_p = kp.TridiagSolver(diag, -c)
        w_c = tri_c.solve(p)
        w_p = tri_p.solve(p)
    else:
        w_c = p.copy()
        w_p = p.copy()
    out_c = kc.advance_span(n, p, w_c, 0.0, 0.05, dx, nu, k, p_max, 0.4, 1e-2, tri_c)
    out_p = kp.advance_span(n, p, w_p, 0.0, 0.05, dx, nu, k, p_max, 0.4, 1e-2, tri_p)
    assert out_c[4] == out_p[4]  # step counts
    assert out_c[3] == out_p[3] == 0.05
    assert out_c[7] == out_p[7] == 0  # status
    for i in range(3):
        assert np.abs(out_c[i] - out_p[i]).max() < 1e-11
    assert abs(out_c[5] - out_p[5]) < 1e-11  # max_p
    assert out_c[6] < 1e-12 and out_p[6] < 1e-12  # mass-balance residual


def test_forced_python_backend():
    code = "import brinkfront; print(brinkfront.backend_name())"
    env = dict(os.environ, BRINKFRONT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True)
    assert out.stdout.strip() == "python"
    assert backend_name() in ("compiled", "python")
