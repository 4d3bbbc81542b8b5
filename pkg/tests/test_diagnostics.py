from math import pi, sin, sqrt
from types import SimpleNamespace

import numpy as np
import pytest

from diagnostics import (
    DecayRegime,
    QuadratureGrid,
    bernstein_sweep,
    build_level,
    calibrate_K,
    checks,
    energy_norm,
    equicontinuity_probe,
    fit_coefficient_decay,
    fit_energy_decay,
    fit_exponential_decay,
    fit_pointwise_decay,
    get_available_checks,
    gram_report,
    l2_norm,
    local_error_sweep,
    lp_norm,
    norm_gram,
    rate_report,
    report_to_frame,
    riesz_lower_check,
    run_check,
    sobolev_norm_fd,
    synthesis_norm_check,
    synthesis_ratio,
    tail_rate_sweep,
    trial_vectors,
    truncation_sweep,
)
from diagnostics.fits import tail_energy
from geometry import DomainRegion, fill_distance, generate_quasi_uniform, separation_radius
from interpolation import (
    BasisVariant,
    CoefficientMatrix,
    Expansion,
    assemble,
    full_basis_family,
    full_coefficient_matrix,
    native_inner,
    solve_full_basis,
)
from kernels import monomial_basis
from localization import suggest_K
from utils.errors import InsufficientDataError, InvalidInputError, UnsupportedError


@pytest.fixture(scope="module")
def grid(unit_square) -> QuadratureGrid:
    return QuadratureGrid.midpoint(unit_square, 64)


@pytest.fixture(scope="module")
def tps_levels(tps, unit_square):
    return [build_level(tps, unit_square, n, seed=0, K=2.0) for n in (16, 25, 36)]


def test_quadrature_weights(unit_square, grid):
    assert grid.volume == pytest.approx(1.0, rel=1e-12)
    assert grid.spacing == pytest.approx(1 / 64)
    disc = QuadratureGrid.midpoint(DomainRegion.ball([0.0, 0.0], 1.0), 200)
    assert disc.volume == pytest.approx(pi, rel=1e-2)
    assert QuadratureGrid.for_resolution(unit_square, 0.125).nodes_per_axis == 24


def test_l2_norm_of_simple_functions(grid):
    assert l2_norm(lambda x: np.ones(len(x)), grid) == pytest.approx(1.0, rel=1e-12)
    assert l2_norm(lambda x: x[:, 0], grid) == pytest.approx(1 / sqrt(3), abs=1e-3)


def test_l2_norm_converges_at_second_order(unit_square):
    def f(x: np.ndarray) -> np.ndarray:
        return np.sin(pi * x[:, 0]) * np.cos(x[:, 1])

    exact = sqrt(0.5 * (0.5 + sin(2) / 4))
    errors = [abs(l2_norm(f, QuadratureGrid.midpoint(unit_square, n)) - exact) for n in (32, 64)]
    assert 3.0 < errors[0] / errors[1] < 5.0


def test_sobolev_norms(grid):
    linear = lambda x: x[:, 0]  # noqa: E731
    assert sobolev_norm_fd(linear, 0, grid) == l2_norm(linear, grid)
    assert sobolev_norm_fd(linear, 1, grid) == pytest.approx(sqrt(1 / 3 + 1), abs=1e-3)
    square = lambda x: x[:, 0] ** 2  # noqa: E731
    assert sobolev_norm_fd(square, 2, grid) == pytest.approx(sqrt(1 / 5 + 4 / 3 + 4), abs=1e-2)
    with pytest.raises(UnsupportedError):
        sobolev_norm_fd(linear, 3, grid)


def test_fd_gradient_of_matern_slice_converges(matern, unit_square):
    X = np.array([[0.5, 0.5]])
    f = Expansion(matern, X, np.array([1.0]), np.zeros(0))
    coarse = sobolev_norm_fd(f, 1, QuadratureGrid.midpoint(unit_square, 32))
    fine = sobolev_norm_fd(f, 1, QuadratureGrid.midpoint(unit_square, 64))
    finer = sobolev_norm_fd(f, 1, QuadratureGrid.midpoint(unit_square, 128))
    assert abs(fine - finer) < abs(coarse - fine)


def test_lp_norm(grid):
    assert lp_norm(lambda x: 2 * x[:, 0], grid, np.inf) == pytest.approx(2 * (1 - 1 / 128))
    assert lp_norm(lambda x: np.ones(len(x)), grid, 1.0) == pytest.approx(1.0)


def test_energy_norm(tps, unit_square):
    X = generate_quasi_uniform(unit_square, 30, seed=0)
    sys = assemble(tps, X)
    A = full_coefficient_matrix(sys).A
    chi = solve_full_basis(sys, [7])[0]
    assert energy_norm(tps, chi) == pytest.approx(sqrt(A[7, 7]), rel=1e-8)
    assert energy_norm(tps, chi) ** 2 == pytest.approx(native_inner(tps, chi, chi), rel=1e-10)
    zero = Expansion(tps, X.points, np.zeros(30), np.zeros(3))
    assert energy_norm(tps, zero) == 0.0


def test_energy_gram_matches_energy_norm(tps, unit_square, grid):
    X = generate_quasi_uniform(unit_square, 25, seed=0)
    family = full_basis_family(assemble(tps, X), [0, 5, 12])
    G = norm_gram(family, "m", grid)
    for j in range(3):
        assert sqrt(G[j, j]) == pytest.approx(energy_norm(tps, family.column(j)), rel=1e-8)
    G0 = norm_gram(family, 0, grid)
    assert sqrt(G0[1, 1]) == pytest.approx(l2_norm(family.column(1), grid), rel=1e-10)


def test_exponential_fit_is_exact():
    t = np.linspace(0.0, 10.0, 200)
    fit = fit_exponential_decay(t, 2.0 * np.exp(-3.0 * t), DecayRegime.POINTWISE, 10)
    assert fit.nu_hat == pytest.approx(3.0, abs=1e-6)
    assert fit.C_hat == pytest.approx(2.0, rel=1e-6)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-9)


def test_pointwise_fit_on_synthetic_function(grid):
    center = np.array([0.5, 0.5])
    h = 0.1

    def f(x: np.ndarray) -> np.ndarray:
        return np.exp(-3.0 * np.linalg.norm(x - center, axis=1) / h)

    fit = fit_pointwise_decay(f, grid, h, center=center)
    assert fit.regime == DecayRegime.POINTWISE
    assert fit.nu_hat == pytest.approx(3.0, abs=1e-6)
    with pytest.raises(InsufficientDataError):
        fit_pointwise_decay(lambda x: np.zeros(len(x)), grid, h, center=center)


def test_decay_fits_of_lagrange_functions(tps, matern, unit_square, grid):
    X = generate_quasi_uniform(unit_square, 100, seed=0)
    h, q = fill_distance(X), separation_radius(X)
    central = int(np.argmin(np.linalg.norm(X.points - 0.5, axis=1)))
    chi = solve_full_basis(assemble(tps, X), [central])[0]
    pointwise = fit_pointwise_decay(chi, grid, h)
    assert pointwise.nu_hat > 0
    energy = fit_energy_decay(tps, chi, X.points[central], h * np.arange(1, 6), h)
    assert energy.nu_hat > 0
    assert tail_energy(tps, chi, X.points[central], 10.0) == 0.0
    A = full_coefficient_matrix(assemble(matern, X))
    coefficient = fit_coefficient_decay(A, X.points, h, q, matern.m, matern.d)
    assert coefficient.regime == DecayRegime.COEFFICIENT
    assert coefficient.nu_hat > 0
    assert 0.0 <= coefficient.r_squared <= 1.0


def test_fit_preconditions(matern, unit_square):
    X = generate_quasi_uniform(unit_square, 20, seed=0)
    A = full_coefficient_matrix(assemble(matern, X))
    with pytest.raises(InsufficientDataError):
        fit_coefficient_decay(A, X.points, 0.2, 0.05, 2, 2)
    chi = solve_full_basis(assemble(matern, X), [0])[0]
    with pytest.raises(InsufficientDataError):
        fit_energy_decay(matern, chi, X.points[0], [0.1, 0.2], 0.1)
    with pytest.raises(InvalidInputError):
        fit_energy_decay(matern, chi, X.points[0], [0.3, 0.2, 0.1], 0.1)


def test_coefficient_fit_floors_the_coefficients_not_the_scaled_values(unit_square):
    X = generate_quasi_uniform(unit_square, 60, seed=0).points
    h = 0.1
    dist = np.linalg.norm(X[:, None, :] - X[None, :, :], axis=2)
    A = CoefficientMatrix(A=1e-6 * np.exp(-dist / h))
    # q^(2m-d) = 1e-8 pushes every scaled value below the fit floor
    fit = fit_coefficient_decay(A, X, h, q=1e-4, m=2, d=2)
    assert fit.nu_hat == pytest.approx(1.0, rel=1e-8)
    assert fit.C_hat == pytest.approx(1e-14, rel=1e-6)


def test_rate_report():
    xs = [0.1, 0.05, 0.025]
    report = rate_report("power", "h", xs, [x**2 for x in xs], target=2.0, tolerance=0.1)
    assert report.slope == pytest.approx(2.0)
    assert report.passed
    dumped = report.model_dump(mode="json", by_alias=True)
    assert dumped["pass"] is True
    assert list(report_to_frame(report).columns) == ["h", "value"]
    semilog = rate_report("exp", "K", [2, 3, 4], [np.exp(-2.0 * k) for k in (2, 3, 4)], scale="semilog")
    assert semilog.slope == pytest.approx(-2.0)
    assert not semilog.passed
    with pytest.raises(InsufficientDataError):
        rate_report("short", "h", [0.1, 0.05], [1.0, 2.0])


def test_trial_vectors():
    a = trial_vectors(4, 5, seed=3, label="t")
    assert a.shape == (9, 4)
    assert np.allclose(np.linalg.norm(a[:5], axis=1), 1.0)
    assert np.array_equal(a[5:], np.eye(4))
    assert np.array_equal(a, trial_vectors(4, 5, seed=3, label="t"))
    inf = trial_vectors(4, 5, seed=3, label="t", p=np.inf)
    assert np.allclose(np.max(np.abs(inf[:5]), axis=1), 1.0)


def test_synthesis_ratio_of_single_function(tps, unit_square, grid):
    X = generate_quasi_uniform(unit_square, 25, seed=0)
    family = full_basis_family(assemble(tps, X), [4])
    expected = l2_norm(family.column(0), grid)
    assert synthesis_ratio(family, 0, grid, trials=5, seed=0) == pytest.approx(expected, rel=1e-10)


def test_levels_extend_the_point_set(tps_levels, unit_square):
    for level in tps_levels:
        assert len(level.X) > level.n
        assert np.array_equal(level.X.points[: level.n], level.Xi.points)
        assert level.family.size == level.n
        assert np.all(unit_square.contains(level.grid.nodes))


def test_bernstein_sigma_zero_is_flat(tps, unit_square, tps_levels):
    report = bernstein_sweep(tps, unit_square, [16, 25, 36], 0, levels=tps_levels, trials=5)
    assert report.slope == 0.0
    assert all(value == 1.0 for _, value in report.sweep)
    assert report.passed
    assert report.target == -0.0


def test_riesz_and_synthesis_and_equicontinuity(tps_levels):
    riesz = riesz_lower_check(tps_levels, p=2.0, trials=5, seed=0)
    assert all(c > 0 for c in riesz.details["c_hat"])
    synthesis = synthesis_norm_check(tps_levels, 0, trials=5, seed=0)
    assert synthesis.target == 1.0
    assert len(synthesis.sweep) == 3
    probe = equicontinuity_probe(tps_levels)
    assert probe.details["eps"] == pytest.approx(0.99)
    assert all(value > 0 for _, value in probe.sweep)


def test_gram_report_passes_for_linear_polynomials():
    report = gram_report(monomial_basis(1, 2), [0.3, 0.4], np.geomspace(0.1, 0.01, 5), 0.2, seed=0)
    assert report.target == 2.0
    assert report.passed


def test_truncation_and_local_sweeps(tps, unit_square):
    tail, error = truncation_sweep(tps, unit_square, 64, [2.0, 3.0, 4.0], seed=0)
    assert [K for K, _ in tail.sweep] == [2.0, 3.0, 4.0]
    assert error.sweep[-1][1] < error.sweep[0][1]
    local = local_error_sweep(tps, unit_square, 64, [1.5, 2.5, 3.5], seed=0, centers=3)
    assert local.scale == "semilog"
    assert local.sweep[-1][1] < local.sweep[0][1]
    rate = tail_rate_sweep(tps, unit_square, [36, 49, 64], 2.0, nu_hat=1.0, seed=0)
    assert rate.target == pytest.approx(1.0 + 2 - 4)


def test_run_check_dispatch(tps, unit_square, tps_levels):
    assert "bernstein" in get_available_checks()
    reports = run_check("gram", tps, unit_square, [16, 25, 36], 2.0, [2.0, 3.0, 4.0], [0], 5, 0, levels=tps_levels)
    assert reports[0].name == "gram-inverse"
    with pytest.raises(InvalidInputError):
        run_check("nope", tps, unit_square, [16], 2.0, [2.0], [0], 5, 0)


def _riesz(monkeypatch, hs, c_hat, variant=BasisVariant.FULL, fraction=None):
    levels = [SimpleNamespace(h=h, variant=variant, c=c) for h, c in zip(hs, c_hat)]
    monkeypatch.setattr(checks, "riesz_lower_constant", lambda lv, p, trials, seed: lv.c)
    return riesz_lower_check(levels, fraction=fraction)


def test_riesz_baseline_is_the_coarsest_level(monkeypatch):
    # levels listed from fine to coarse: the baseline is the last entry
    report = _riesz(monkeypatch, [0.05, 0.1, 0.2], [0.4, 0.6, 0.9], fraction=0.5)
    assert report.details["baseline_h"] == 0.2
    assert not report.passed
    assert _riesz(monkeypatch, [0.2, 0.1, 0.05], [0.9, 0.6, 0.5], fraction=0.5).passed


def test_riesz_drift_bound(monkeypatch):
    assert _riesz(monkeypatch, [0.2, 0.1, 0.05], [1.0, 2.0, 3.5]).passed
    assert not _riesz(monkeypatch, [0.2, 0.1, 0.05], [1.0, 2.0, 4.5]).passed


def test_riesz_local_basis_allowance(monkeypatch):
    hs, c_hat = [0.2, 0.1, 0.05], [1.0, 0.6, 0.15]
    assert not _riesz(monkeypatch, hs, c_hat).passed
    report = _riesz(monkeypatch, hs, c_hat, variant=BasisVariant.LOCAL)
    assert report.passed
    assert report.details["fraction"] == pytest.approx(0.125)
    assert report.details["drift_bound"] == pytest.approx(8.0)


def test_calibrated_K_follows_the_decay_fit(tps, unit_square):
    K, fit = calibrate_K(tps, unit_square, 100, seed=0)
    assert fit.nu_hat > 0
    assert K == pytest.approx(suggest_K(tps, fit.nu_hat))


def test_local_error_sweep_uses_every_center_by_default(tps, unit_square):
    report = local_error_sweep(tps, unit_square, 25, [1.5, 2.5, 3.5], seed=0)
    assert report.details["centers"] == 25
    sampled = local_error_sweep(tps, unit_square, 25, [1.5, 2.5, 3.5], seed=0, centers=4)
    assert sampled.details["centers"] == 4
    assert all(s <= f for (_, s), (_, f) in zip(sampled.sweep, report.sweep))


def test_run_check_tail_includes_the_rate_sweep(tps, unit_square):
    reports = run_check("tail", tps, unit_square, [36, 49, 64], 2.0, [2.0, 3.0, 4.0], [0], 5, 0)
    assert [r.name for r in reports] == ["tail-l1", "truncation-error", "tail-rate"]
    assert reports[2].details["K"] == 2.0


def test_run_check_spectrum(tps, unit_square, tps_levels):
    (report,) = run_check("spectrum", tps, unit_square, [16, 25, 36], 2.0, [2.0], [0], 5, 0, levels=tps_levels)
    assert report.name == "footprint-theta"
    assert report.passed
    assert all(s["theta"] > 0 for s in report.details["spectra"])


def test_run_check_boundary_regularity(tps, unit_square):
    (report,) = run_check("regularity", tps, unit_square, [16], 2.0, [2.0], [0], 5, 0)
    assert report.passed
    assert report.slope == pytest.approx(0.0, abs=1e-10)
    assert report.details["alpha_hat"] == pytest.approx(pi / 4, rel=0.05)


def test_run_check_kernel_norms(matern, unit_square):
    reports = run_check("kernel-norm", matern, unit_square, [16], 2.0, [2.0], [0, 1, "m"], 5, 0)
    assert [r.name for r in reports] == ["kernel-norm-sigma-0", "kernel-norm-sigma-1"]
    assert all(r.passed for r in reports)
    # the norm over a growing ball cannot shrink
    assert all(b >= a for (_, a), (_, b) in zip(reports[0].sweep, reports[0].sweep[1:]))
