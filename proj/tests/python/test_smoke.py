"""Smoke tests for the Python bindings: shapes, determinism, estimator
identities, persistence, and error translation."""

import json
import math

import numpy as np
import pytest

import skewkrr


def test_generate_shapes_and_determinism():
    X, y = skewkrr.generate("uni_peak", n=200, d=2, noise_sd=0.1, seed=11)
    assert X.shape == (200, 2)
    assert y.shape == (200,)
    X2, y2 = skewkrr.generate("uni_peak", n=200, d=2, noise_sd=0.1, seed=11)
    assert np.array_equal(X, X2)
    assert np.array_equal(y, y2)
    X3, _ = skewkrr.generate("uni_peak", n=200, d=2, noise_sd=0.1, seed=12)
    assert not np.array_equal(X, X3)


def test_truth_peak_value():
    X = np.array([[0.4]])
    value = skewkrr.truth("uni_peak", X)[0]
    assert value == pytest.approx(2.0 * math.sin(0.2 * math.pi), abs=1e-9)


def test_zero_noise_matches_truth():
    X, y = skewkrr.generate("double_peak", n=64, d=1, noise_sd=0.0, seed=3)
    assert np.allclose(y, skewkrr.truth("double_peak", X), atol=0.0)


def test_full_equals_single_node_dac():
    X, y = skewkrr.generate("uni_peak", n=120, d=1, noise_sd=0.1, seed=5)
    grid = np.linspace(0.0, 1.0, 50).reshape(-1, 1)
    full = skewkrr.fit(X, y, estimator="full", sigma=0.2, lambda_=1e-4, seed=9)
    dac = skewkrr.fit(X, y, estimator="dac", nodes=1, sigma=0.2, lambda_=1e-4, seed=9)
    assert np.array_equal(full.predict(grid), dac.predict(grid))


def test_odac_fit_predict_and_plan_accounting():
    X, y = skewkrr.generate("uni_peak", n=400, d=1, noise_sd=0.1, seed=6)
    model = skewkrr.fit(X, y, estimator="odac", nodes=8, slicing="scott", tau=1.0,
                        sigma=0.05, lambda_=1e-6, seed=7)
    assert model.k == 8
    plan = model.plan
    assert plan["post_dedup_total"] <= plan["pre_dedup_total"]
    assert plan["post_dedup_total"] >= 400  # oversampling never drops rows
    grid = np.linspace(0.0, 1.0, 200).reshape(-1, 1)
    predictions = model.predict(grid)
    assert predictions.shape == (200,)
    assert np.all(np.isfinite(predictions))
    # the fitted surface should track the peak far better than predicting zero
    target = skewkrr.truth("uni_peak", grid)
    assert skewkrr.mse(predictions, target) < skewkrr.mse(np.zeros(200), target)


def test_fit_is_deterministic_in_the_seed():
    X, y = skewkrr.generate("uni_peak", n=150, d=1, noise_sd=0.1, seed=21)
    grid = np.linspace(0.0, 1.0, 64).reshape(-1, 1)
    a = skewkrr.fit(X, y, estimator="odac", nodes=5, seed=13, sigma=0.1, lambda_=1e-5)
    b = skewkrr.fit(X, y, estimator="odac", nodes=5, seed=13, sigma=0.1, lambda_=1e-5)
    assert np.array_equal(a.predict(grid), b.predict(grid))


def test_bandwidth_and_lambda_defaults_resolve():
    X, y = skewkrr.generate("uni_peak", n=100, d=1, noise_sd=0.1, seed=30)
    model = skewkrr.fit(X, y, estimator="dac", nodes=4, seed=30)
    assert model.sigma > 0
    assert model.lambda_ > 0


def test_save_load_roundtrip(tmp_path):
    X, y = skewkrr.generate("uni_peak", n=80, d=2, noise_sd=0.1, seed=40)
    model = skewkrr.fit(X, y, estimator="odac", nodes=4, sigma=0.3, lambda_=1e-4, seed=41)
    path = tmp_path / "model.json"
    model.save(str(path))
    back = skewkrr.load(str(path))
    grid = np.random.default_rng(0).uniform(size=(20, 2))
    assert np.allclose(model.predict(grid), back.predict(grid), atol=1e-12)
    doc = json.loads(path.read_text())
    assert "lambda_global" in doc


def test_plan_and_slices_inspection():
    _, y = skewkrr.generate("uni_peak", n=500, d=1, noise_sd=0.1, seed=50)
    info = skewkrr.slices(y, "scott")
    assert sum(info["counts"]) == 500
    assert len(info["boundaries"]) == len(info["counts"]) + 1
    plan = skewkrr.oversample_plan(y, "scott", tau=1.0, nodes=10, seed=51)
    assert plan["k"] == 10
    assert len(plan["node_sizes"]) == 10
    assert plan["pre_dedup_total"] <= len(info["counts"]) * 500


def test_effective_dimension_hand_value():
    assert skewkrr.effective_dimension([1.0, 0.0, 0.0], 0.001) == pytest.approx(
        0.999000999, abs=1e-9)


def test_spectrum_reports_descending_eigenvalues():
    X, _ = skewkrr.generate("uni_peak", n=40, d=1, noise_sd=0.0, seed=60)
    diag = skewkrr.spectrum(X, kernel="gaussian", sigma=0.3, lambda_=1e-3)
    eigenvalues = diag["eigenvalues"]
    assert all(a >= b for a, b in zip(eigenvalues, eigenvalues[1:]))
    assert 0 < diag["d_lambda"] <= len(eigenvalues)


def test_errors_translate_to_python_exceptions():
    X, y = skewkrr.generate("uni_peak", n=30, d=1, noise_sd=0.1, seed=70)
    with pytest.raises(ValueError):
        skewkrr.fit(X, y, estimator="bagging")
    with pytest.raises(ValueError):
        skewkrr.generate("triple_peak")
    with pytest.raises(RuntimeError):
        skewkrr.fit(X, y, estimator="dac", nodes=500, sigma=0.2, lambda_=1e-3)
