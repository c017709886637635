import math

import numpy as np
import pytest

import dysonsim as ds

SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
EXCITED = np.array([[1, 0], [0, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


def amplitude_damping(gamma):
    return ds.LindbladModel(np.zeros((2, 2), dtype=complex), [(SIGMA_MINUS, ds.RateFunction.constant(gamma, 2.0))])


def test_oracle_closed_form():
    model = amplitude_damping(0.1)
    rho = ds.integrate_master(model, EXCITED, 1.0)
    assert abs(ds.expectation(Z, rho) - (2 * math.exp(-0.1) - 1)) < 1e-6


def test_first_order_term():
    model = amplitude_damping(0.1)
    assert abs(ds.dyson_expectation_exact(model, EXCITED, Z, 2.0, 1) + 0.4) < 1e-8


def test_volterra_within_bound():
    model = amplitude_damping(0.1)
    exact = ds.integrate_master(model, EXCITED, 2.0)
    approx = ds.volterra_truncated(model, EXCITED, 2.0, 3)
    assert ds.trace_distance(exact, approx) <= 0.4**4 / 48 + 1e-5


def test_estimator_and_formulas():
    model = amplitude_damping(0.1)
    out = ds.estimate_observable(model, EXCITED, Z, 1.0, [2000, 2000], seed=3)
    assert len(out["cumulative"]) == 3
    assert abs(out["total"] - (2 * math.exp(-0.1) - 1)) < 1e-3
    assert ds.required_samples(1, 0.1, 2.0, 1.0, 1, 1.0, 1, 1) == 57601
    assert ds.truncation_order(1.0, 0.01) == 9
    assert ds.pauli_matrix("Z").shape == (2, 2)


def test_presets_and_run():
    assert len(ds.preset_names()) >= 6
    cfg = ds.preset("amplitude-damping")
    cfg["budget"]["samples"] = 500
    out = ds.run_experiment(cfg, workers=2)
    assert out["check_passed"]
    assert out["csv"].startswith("time,oracle_value,order0")
    assert "results" in out["report"]


def test_errors_are_raised():
    with pytest.raises(ds.ValidationError):
        ds.preset("no-such-preset")
    with pytest.raises(ds.Error):
        ds.volterra_truncated(amplitude_damping(0.1), EXCITED, 1.0, -1)
