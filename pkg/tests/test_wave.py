"""Analytic traveling-wave oracle tests."""

import math

import numpy as np
import pytest

from brinkfront.model import ModelParams, h_map, q_residual
from brinkfront.wave import build_wave, eval_profiles, profile_arrays, verify_wave_odes

# closed forms for nu=1, p_max=1 at 40-digit precision
SIGMA_11 = 0.4142135623730950488016887242096980786
W0_11 = SIGMA_11
JUMP_11 = 0.7071067811865475244008443621048490393


def test_build_wave_values():
    w = build_wave(1.0, 1.0)
    assert w.sigma == pytest.approx(SIGMA_11, rel=1e-15)
    assert w.w0 == pytest.approx(W0_11, rel=1e-15)
    assert w.jump == pytest.approx(JUMP_11, rel=1e-15)


def test_build_wave_darcy_limit():
    w = build_wave(0.0, 1.0)
    assert w.sigma == 1.0
    assert w.jump == 0.0
    assert w.w0 == 0.0


def test_build_wave_validation():
    with pytest.raises(ValueError):
        build_wave(1.0, 0.0)
    with pytest.raises(ValueError):
        build_wave(-0.5, 1.0)


def test_sigma_decreasing_in_nu():
    sigmas = [build_wave(nu, 1.0).sigma for nu in (0.0, 0.25, 1.0, 4.0)]
    assert sigmas == sorted(sigmas, reverse=True)
    assert sigmas[1] == pytest.approx(0.6180339887498948, rel=1e-15)
    assert sigmas[3] == pytest.approx(0.2360679774997897, rel=1e-15)


def test_jump_positive_iff_viscous():
    assert build_wave(0.0, 1.0).jump == 0.0
    for nu in (0.1, 1.0, 3.0):
        assert build_wave(nu, 1.0).jump > 0.0


def test_profiles_far_field():
    w = build_wave(1.0, 1.0)
    n, p, pot = eval_profiles(w, 50.0)
    assert (n, p) == (0.0, 0.0) and pot < 1e-20
    n, p, pot = eval_profiles(w, -80.0)
    assert n == 1.0
    assert p == pytest.approx(1.0, abs=1e-15)
    assert pot == pytest.approx(1.0, abs=1e-15)


def test_profiles_interface_continuity():
    w = build_wave(1.0, 1.0)
    eps = 1e-9
    _, _, w_left = eval_profiles(w, -eps)
    n0, p0, w_mid = eval_profiles(w, 0.0)
    _, _, w_right = eval_profiles(w, eps)
    assert w_mid == w.w0
    assert abs(w_left - w.w0) < 1e-8 and abs(w_right - w.w0) < 1e-8
    # one-sided derivatives both equal -sigma
    d_right = (eval_profiles(w, 2e-6)[2] - eval_profiles(w, 1e-6)[2]) / 1e-6
    d_left = (eval_profiles(w, -1e-6)[2] - eval_profiles(w, -2e-6)[2]) / 1e-6
    assert d_right == pytest.approx(-w.sigma, rel=1e-5)
    assert d_left == pytest.approx(-w.sigma, rel=1e-5)
    # interface carries the left limits of (n, p)
    assert n0 == 1.0
    assert p0 == pytest.approx(JUMP_11, rel=1e-15)


def test_pressure_matches_h_of_potential():
    w = build_wave(1.0, 1.0)
    params = ModelParams(k=100.0, nu=1.0, p_max=1.0)
    _, p0, w0 = eval_profiles(w, 0.0)
    assert abs(p0 - h_map(w0, params)) < 1e-12


def test_complementarity_on_wave():
    w = build_wave(1.0, 1.0)
    params = ModelParams(k=100.0, nu=1.0, p_max=1.0)
    x = np.linspace(-8.0, 8.0, 4001)
    n, p, pot = profile_arrays(w, x)
    q = q_residual(p, pot, params)
    assert np.abs(q[x < 0.0]).max() < 1e-12  # p = H(W) behind the front
    assert np.all(p[x > 0.0] == 0.0)
    # the limit relation p*(p - W - nu G(p)) = 0 holds everywhere
    assert np.abs(p * q).max() < 1e-12


def test_wave_ode_residual_and_order():
    w = build_wave(1.0, 1.0)
    res1 = verify_wave_odes(w, 1e-3)
    res2 = verify_wave_odes(w, 5e-4)
    assert res1 < 1e-5
    assert 3.5 < res1 / res2 < 4.5


def test_wave_ode_residual_positive_side():
    # -nu W'' + W = 0 on the decaying side alone
    w = build_wave(1.0, 1.0)
    dx = 1e-3
    x = dx + dx * np.arange(5000)
    pot = w.w0 * np.exp(-x / math.sqrt(w.nu))
    lap = (pot[:-2] - 2.0 * pot[1:-1] + pot[2:]) / dx ** 2
    assert np.abs(-w.nu * lap + pot[1:-1]).max() < 1e-6


def test_profiles_undefined_for_darcy():
    w = build_wave(0.0, 1.0)
    with pytest.raises(ValueError):
        eval_profiles(w, 0.5)
    with pytest.raises(ValueError):
        verify_wave_odes(w, 1e-3)
