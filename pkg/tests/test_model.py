"""Pressure law, growth law and H-map unit tests."""

import numpy as np
import pytest

from brinkfront.model import (
    GrowthLaw,
    ModelParams,
    density_of_pressure,
    growth,
    h_map,
    p_min,
    pressure_of_density,
    q_residual,
)

P100 = ModelParams(k=100.0, nu=1.0, p_max=1.0)

# high-precision reference: (100/99) * 1.01**99 evaluated at 40 digits
PI_100_AT_1_01 = 2.705084337855311624429637674574988332513


def test_pressure_law_values():
    assert pressure_of_density(0.0, P100) == 0.0
    assert pressure_of_density(1.0, P100) == pytest.approx(100.0 / 99.0, rel=1e-15)
    assert pressure_of_density(1.01, P100) == pytest.approx(PI_100_AT_1_01, rel=1e-13)


def test_pressure_law_monotone():
    n = np.linspace(0.0, 1.2, 200)
    p = pressure_of_density(n, P100)
    assert np.all(np.diff(p) > 0.0)


def test_pressure_law_rejects_negative_density():
    with pytest.raises(ValueError):
        pressure_of_density(-1e-9, P100)
    with pytest.raises(ValueError):
        pressure_of_density(np.array([0.1, -0.2]), P100)


def test_stiff_limit_trend():
    # below 1 the pressure collapses with k, above 1 it blows up
    below = [pressure_of_density(0.9, ModelParams(k=float(k))) for k in (25, 50, 100, 200)]
    above = [pressure_of_density(1.1, ModelParams(k=float(k))) for k in (25, 50, 100, 200)]
    assert all(a > b for a, b in zip(below, below[1:]))
    assert below[-1] < 1e-8
    assert all(a < b for a, b in zip(above, above[1:]))


def test_large_k_log_space():
    p = pressure_of_density(1.1, ModelParams(k=400.0))
    assert np.isfinite(p) and p > 1e10
    assert pressure_of_density(1e-12, ModelParams(k=400.0)) == 0.0


def test_density_of_pressure_inverse():
    assert density_of_pressure(0.0, P100) == 0.0
    assert density_of_pressure(100.0 / 99.0, P100) == pytest.approx(1.0, rel=1e-12)
    for n in (0.5, 1.0, 1.1):
        p = pressure_of_density(n, P100)
        assert density_of_pressure(p, P100) == pytest.approx(n, rel=1e-12)
    with pytest.raises(ValueError):
        density_of_pressure(-0.1, P100)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(k=1.5)
    with pytest.raises(ValueError):
        ModelParams(k=100.0, nu=-1.0)
    with pytest.raises(ValueError):
        ModelParams(k=100.0, p_max=0.0)
    with pytest.raises(ValueError):
        ModelParams(k=100.0, growth="logistic")
    assert ModelParams(k=100.0, nu=0.0).is_darcy


def test_linear_growth_values():
    law = P100.law
    assert growth(P100.p_max, law) == 0.0
    assert growth(0.0, law) == 1.0
    assert growth(0.3, law) == pytest.approx(0.7, abs=1e-15)
    assert law.g_prime(0.4) == -1.0


def test_h_map_linear():
    assert h_map(0.0, P100) == pytest.approx(0.5, abs=1e-15)
    assert h_map(P100.p_max, P100) == P100.p_max  # G(P_M) = 0 fixed point
    assert p_min(P100) == pytest.approx(P100.nu * P100.p_max / (1.0 + P100.nu), abs=1e-15)


def test_h_map_monotone_contraction():
    rng = np.random.default_rng(7)
    w = np.sort(rng.uniform(0.0, 1.0, 50))
    h = h_map(w, P100)
    assert np.all(np.diff(h) > 0.0)
    assert np.all(np.diff(h) < np.diff(w))  # H' < 1


def test_h_map_rootfind_matches_closed_form():
    # steeper linear law routed through the generic bisection/Newton path
    law = GrowthLaw(g=lambda p: 2.0 * (1.0 - p), g_prime=lambda p: -2.0, p_max=1.0)
    params = ModelParams(k=100.0, nu=0.5, p_max=1.0, growth=law)
    for w in (0.0, 0.3, 0.77, 1.0):
        expect = (w + 2.0 * 0.5) / (1.0 + 2.0 * 0.5)
        assert h_map(w, params) == pytest.approx(expect, abs=1e-12)


def test_h_map_rootfind_domain_error():
    law = GrowthLaw(g=lambda p: 1.0 - p, g_prime=lambda p: -1.0, p_max=1.0)
    params = ModelParams(k=100.0, nu=1.0, p_max=1.0, growth=law)
    with pytest.raises(ValueError):
        h_map(-1.5, params)  # below -nu*G(0)


def test_q_residual_identities():
    assert q_residual(h_map(0.7, P100), 0.7, P100) == pytest.approx(0.0, abs=1e-12)
    assert q_residual(0.0, 0.0, P100) == 1.0  # nu*G(0) = p_max
    assert q_residual(P100.p_max, P100.p_max, P100) == 0.0


def test_q_residual_on_h_graph_random():
    rng = np.random.default_rng(2024)
    w = rng.uniform(0.0, P100.p_max, 100)
    q = q_residual(h_map(w, P100), w, P100)
    assert np.abs(q).max() < 1e-10
