import math

import numpy as np
import pytest

from specmoll import (DegreePolicy, ReconstructionSettings, ThetaPolicy,
                      choose_params, compute_coefficients, convergence_study,
                      default_grid, detect_edges_naive,
                      error_decomposition_discrete,
                      error_decomposition_spectral, interpolant_coefficients,
                      measure_loss_onset, predicted_loss_location,
                      run_reconstruction, sample_signal, smooth_signal,
                      spectral_floor)
from specmoll.lab import clamped_log10, fit_log_error

from _oracles import middle_form_truncation

SIN = smooth_signal("sin", np.sin)
SPECTRAL = ThetaPolicy(mode="custom", floor=spectral_floor)


# --------------------------------------------------------------- decomposition

def test_bandlimited_truncation_vanishes(cfg):
    # S_N reproduces sin exactly, so the truncation term is pure quadrature noise
    spec = choose_params(1.0, 8, SIN, DegreePolicy(), SPECTRAL)
    E, R, T = error_decomposition_spectral(SIN, 8, 1.0, spec, cfg)
    assert abs(T) < 1e-10
    assert E == pytest.approx(R + T, abs=1e-15)


def test_bandlimited_aliasing_vanishes(cfg):
    # the trapezoid sum is exact for resolved modes; the residual aliasing
    # comes from the kernel's own spectral tail beyond 2N - p and dies
    # root-exponentially (measured: 2.4e-6 / 5.8e-11 / 1.2e-15 at N=8/16/32)
    for N, tol in ((16, 1e-9), (32, 1e-12)):
        spec = choose_params(1.0, N, SIN, DegreePolicy(), SPECTRAL)
        E, A, R = error_decomposition_discrete(SIN, N, 1.0, spec, cfg)
        assert abs(A) < tol


def test_adaptive_split_balanced_and_small(f1, cfg):
    spec = choose_params(math.pi / 2, 128, f1, DegreePolicy(), SPECTRAL)
    E, R, T = error_decomposition_spectral(f1, 128, math.pi / 2, spec, cfg)
    assert abs(R) < 1e-5 and abs(T) < 1e-5


def test_power_half_split_is_regularization_dominated(f1, cfg):
    # with p = sqrt(N) the kernel is fully resolved by the projection, so
    # the truncation term collapses and the regularization term carries
    # essentially the whole error at x = pi/2
    spec = choose_params(math.pi / 2, 128, f1,
                         DegreePolicy(kind="power", gamma=0.5), SPECTRAL)
    E, R, T = error_decomposition_spectral(f1, 128, math.pi / 2, spec, cfg)
    assert abs(R) > 1e-7
    assert abs(R) > 100 * abs(T)
    assert abs(E) == pytest.approx(abs(R), rel=1e-3)


def test_discrete_aliasing_small_interior(f1, cfg):
    from specmoll import discrete_floor

    pol = ThetaPolicy(mode="custom", floor=discrete_floor)
    spec = choose_params(math.pi / 2, 128, f1, DegreePolicy(), pol)
    E, A, R = error_decomposition_discrete(f1, 128, math.pi / 2, spec, cfg)
    assert abs(A) < 1e-4
    # regression pin: ~1e-15 as built
    assert abs(A) < 1e-12


def test_truncation_middle_form_crosscheck(f1, cfg):
    # E - R must agree with the directly assembled projected-kernel form
    N = 16
    coeffs = compute_coefficients(f1, N)
    for x in (0.6, 1.2, math.pi / 2, 2.0, 2.4):
        spec = choose_params(x, N, f1, DegreePolicy(), SPECTRAL)
        E, R, T = error_decomposition_spectral(f1, N, x, spec, cfg)
        T_mid = middle_form_truncation(f1, coeffs, x, spec.theta, spec.p,
                                       cfg.c)
        assert T == pytest.approx(T_mid, abs=1e-6)


# ------------------------------------------------------------------ loss onset

def test_predicted_loss_location_table_rows():
    assert predicted_loss_location(128, 0.8) == pytest.approx(2.0, abs=0.05)
    assert predicted_loss_location(32, 0.5) == pytest.approx(2.6, abs=0.05)
    assert predicted_loss_location(128, 0.2) == pytest.approx(3.1, abs=0.05)


def test_measure_loss_onset_synthetic():
    xs = np.linspace(0, math.pi, 100)
    err = np.where(xs > 2.5, 1.0, 1e-6)
    assert measure_loss_onset(xs, err) == pytest.approx(2.5, abs=0.05)
    assert measure_loss_onset(xs, np.full_like(xs, 1e-6)) is None


def test_onset_threshold_sensitivity(f1):
    # halving the threshold moves the gamma=0.5 onset very little; pushing
    # it up to 5e-2 lands in the final O(1) wall and shifts the crossing
    # by ~0.25 toward the jump (measured), so only the lower range is tight
    settings = ReconstructionSettings(
        sig=f1, N=64, degree=DegreePolicy(kind="power", gamma=0.5))
    xs = np.arange(math.pi / 2, math.pi, math.pi / 150)
    report = run_reconstruction(settings, xs)
    lo, mid, hi = [measure_loss_onset(xs, report.total, thr)
                   for thr in (5e-3, 1e-2, 5e-2)]
    assert mid - lo <= 0.1
    assert hi - mid <= 0.3
    assert lo <= mid <= hi


# ----------------------------------------------------------------- study

def test_report_identity_and_metadata(f1):
    settings = ReconstructionSettings(sig=f1, N=32)
    report = run_reconstruction(settings, default_grid(40))
    assert np.max(np.abs(report.total - (report.reg + report.second))) < 1e-13
    assert report.metadata["N"] == 32
    assert report.split_kind == "spectral"


def test_fit_log_error_machinery():
    xs = np.linspace(0, 1, 50)
    d = np.linspace(0.5, 3.0, 50)
    N = 64
    err = 10.0 ** (-0.5 * np.sqrt(d * N) - 1)
    slope, icpt, r2, n = fit_log_error(xs, err, d, N)
    assert slope == pytest.approx(-0.5, abs=1e-9)
    assert icpt == pytest.approx(-1.0, abs=1e-9)
    assert r2 == pytest.approx(1.0, abs=1e-12)
    assert n == 50


def test_clamped_log_floor():
    out = clamped_log10([1e-20, 0.0, 1e-3])
    assert out[0] == -16.0
    assert out[1] == -16.0
    assert out[2] == pytest.approx(-3.0)


def test_convergence_study_adaptive(f1):
    settings = ReconstructionSettings(sig=f1, N=32)
    study = convergence_study(settings, [32, 64], default_grid(150))
    maxes = [row.max_err_interior for row in study.rows]
    assert maxes[1] < maxes[0]
    for row in study.rows:
        assert row.slope < 0
        assert row.r2 >= 0.9
    # doubling the mode count buys at least 10x interior accuracy
    assert maxes[0] / maxes[1] >= 10.0


def test_convergence_study_rejects_decreasing_ns(f1):
    with pytest.raises(ValueError):
        convergence_study(ReconstructionSettings(sig=f1, N=32), [64, 32])


# ----------------------------------------------------------------- detector

def test_detect_edges_f1(f1):
    c = compute_coefficients(f1, 128)
    edges = detect_edges_naive(c, threshold=0.5)
    # the genuine jump at pi is found; every detection sits near a
    # declared edge (f1 carries no jump at 0, so none is reported there)
    assert any(abs(e - math.pi) < 2 * math.pi / (8 * 128) for e in edges)
    for e in edges:
        assert min(abs(e - math.pi), min(e, 2 * math.pi - e)) < 0.05


def test_detect_edges_f2(f2):
    c = compute_coefficients(f2, 128)
    edges = detect_edges_naive(c, threshold=0.5)
    spacing = 2 * math.pi / (8 * 128)
    for target in (0.0, math.pi / 2):
        assert any(min(abs(e - target), abs(e - target - 2 * math.pi)) <
                   2 * spacing for e in edges)


def test_detect_edges_smooth_is_empty():
    # first-order concentration leaks ~pi/log(N) on smooth data, so the
    # no-jump assertion needs N large enough for the leak to clear 0.5
    c = compute_coefficients(SIN, 1024)
    with pytest.warns(UserWarning, match="no jump candidate"):
        assert detect_edges_naive(c, threshold=0.5) == []


def test_detect_edges_from_samples(f1):
    c = interpolant_coefficients(sample_signal(f1, 128))
    edges = detect_edges_naive(c, threshold=0.5)
    assert any(abs(e - math.pi) < 0.05 for e in edges)


def test_detect_edges_needs_enough_modes(f1):
    with pytest.raises(ValueError):
        detect_edges_naive(compute_coefficients(f1, 4), 0.5)


# ----------------------------------------------------------------- misc

def test_monotone_interior_improvement(f1):
    settings = ReconstructionSettings(sig=f1, N=32)
    study = convergence_study(settings, [32, 64, 128], default_grid(100))
    maxes = [row.max_err_interior for row in study.rows]
    assert maxes[0] >= maxes[1] >= maxes[2]


def test_user_data_runs_without_exact_columns(f1):
    coeffs = compute_coefficients(f1, 16)
    settings = ReconstructionSettings(sig=None, N=16, edges=(0.0, math.pi))
    report = run_reconstruction(settings, default_grid(20), data=coeffs)
    assert np.all(np.isnan(report.exact))
    assert np.all(np.isfinite(report.recovered))
