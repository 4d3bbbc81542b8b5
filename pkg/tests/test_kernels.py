from math import log

import numpy as np
import pytest
from scipy import special

from geometry import generate_quasi_uniform
from kernels import (
    KernelFamily,
    KernelSpec,
    bessel_k,
    get_available_families,
    get_kernel_spec,
    kernel_eval,
    kernel_matrix,
    kernel_sobolev_norm_estimate,
    matern_profile,
    monomial_basis,
    poly_eval,
    polynomial_basis,
    radial_profile,
    vandermonde,
)
from utils.errors import InvalidInputError, UnsupportedError


def test_spec_requires_m_above_half_dimension():
    with pytest.raises(ValueError):
        KernelSpec(family=KernelFamily.MATERN, m=1, d=2)
    with pytest.raises(ValueError):
        get_kernel_spec("gaussian", 2, 2)


def test_available_families():
    assert get_available_families() == ["matern", "surface_spline"]


@pytest.mark.parametrize("m,d", [(2, 2), (2, 3), (3, 3), (3, 2)])
def test_matern_is_one_at_zero(m, d):
    spec = KernelSpec(family=KernelFamily.MATERN, m=m, d=d)
    assert radial_profile(spec, np.array([0.0]))[0] == pytest.approx(1.0, rel=1e-12)


def test_matern_half_order_is_exponential():
    spec = KernelSpec(family=KernelFamily.MATERN, m=2, d=3)
    r = np.array([0.0, 0.3, 1.0, 4.0])
    assert np.allclose(radial_profile(spec, r), np.exp(-r), rtol=1e-12)


@pytest.mark.parametrize("nu", [0.5, 1.5, 2.5, 1.0, 0.3])
def test_bessel_k_matches_scipy(nu):
    r = np.array([0.1, 1.0, 5.0])
    assert np.allclose(bessel_k(nu, r), special.kv(nu, r), rtol=1e-12)
    assert bessel_k(-nu, 1.0) == pytest.approx(float(special.kv(nu, 1.0)), rel=1e-12)


def test_bessel_k_rejects_nonpositive_argument():
    with pytest.raises(InvalidInputError):
        bessel_k(1.0, np.array([0.0, 1.0]))


def test_matern_profile_limit():
    assert matern_profile(1.0, np.array([0.0]))[0] == pytest.approx(1.0)
    assert matern_profile(1.0, np.array([1e-8]))[0] == pytest.approx(1.0, rel=1e-6)


def test_surface_splines():
    tps = KernelSpec(family=KernelFamily.SURFACE_SPLINE, m=2, d=2)
    assert radial_profile(tps, np.array([0.0]))[0] == 0.0
    assert kernel_eval(tps, np.array([0.0, 0.0]), np.array([2.0, 0.0])) == pytest.approx(4 * log(2))
    odd = KernelSpec(family=KernelFamily.SURFACE_SPLINE, m=2, d=3)
    assert odd.normalization == -1.0
    assert radial_profile(odd, np.array([0.5]))[0] == pytest.approx(-0.5)
    assert odd.cpd_degree == 1


def test_kernel_matrix_symmetric(tps, square_points):
    K = kernel_matrix(tps, square_points.points)
    assert np.array_equal(K, K.T)
    assert np.all(np.diag(K) == 0.0)
    B = kernel_matrix(tps, square_points.points[:5], square_points.points[:7])
    assert B.shape == (5, 7)
    assert np.allclose(B, K[:5, :7])


def test_monomial_basis_order():
    basis = monomial_basis(1, 2)
    assert basis.N == 3
    assert basis.exponents.tolist() == [[0, 0], [1, 0], [0, 1]]
    assert monomial_basis(2, 2).N == 6
    assert monomial_basis(1, 3).N == 4


def test_polynomial_space_of_kernels(tps, matern):
    assert polynomial_basis(matern).N == 0
    assert polynomial_basis(tps).N == 3
    assert vandermonde(polynomial_basis(matern), np.zeros((4, 2))).shape == (4, 0)


def test_vandermonde_matches_poly_eval(tps, square_points):
    basis = polynomial_basis(tps)
    Phi = vandermonde(basis, square_points.points)
    for j in range(basis.N):
        assert Phi[3, j] == pytest.approx(poly_eval(basis, j, square_points.points[3]))
    with pytest.raises(InvalidInputError):
        poly_eval(basis, 3, square_points.points[0])


def test_matern_norm_estimate_converges(matern):
    coarse = kernel_sobolev_norm_estimate(matern, 1, 2.0, 1.0, 128)
    fine = kernel_sobolev_norm_estimate(matern, 1, 2.0, 1.0, 256)
    assert coarse > 0
    assert abs(coarse - fine) / fine < 0.05


def test_norm_estimate_rejects_unsupported_orders(matern):
    with pytest.raises(UnsupportedError):
        kernel_sobolev_norm_estimate(matern, 3, 2.0, 1.0, 64)
    with pytest.raises(InvalidInputError):
        kernel_sobolev_norm_estimate(matern, 0, 2.0, 1.0, 8)


@pytest.mark.parametrize("amplitude", [0.5, 3.0])
@pytest.mark.parametrize("p", [2.0, float("inf")])
def test_norm_estimate_is_homogeneous_in_amplitude(matern, amplitude, p):
    base = kernel_sobolev_norm_estimate(matern, 1, p, 1.0, 32)
    scaled = kernel_sobolev_norm_estimate(matern, 1, p, 1.0, 32, amplitude=amplitude)
    assert scaled == pytest.approx(amplitude * base, rel=1e-12)


def test_kernels_are_symmetric_in_their_arguments(tps, matern):
    rng = np.random.default_rng(21)
    for spec in (tps, matern):
        for x, y in zip(rng.uniform(-2.0, 2.0, (1000, 2)), rng.uniform(-2.0, 2.0, (1000, 2))):
            assert kernel_eval(spec, x, y) == kernel_eval(spec, y, x)


def test_surface_spline_form_is_nonnegative_under_side_conditions(tps):
    rng = np.random.default_rng(13)
    basis = polynomial_basis(tps)
    for _ in range(50):
        X = rng.uniform(0.0, 1.0, (12, 2))
        Q, _ = np.linalg.qr(vandermonde(basis, X))
        a = rng.standard_normal(12)
        a -= Q @ (Q.T @ a)
        K = kernel_matrix(tps, X)
        assert a @ K @ a >= -1e-10 * np.max(np.abs(K)) * (a @ a)


def test_matern_gram_is_positive_definite(matern, unit_square):
    for seed in range(5):
        X = generate_quasi_uniform(unit_square, 40, seed=seed)
        assert np.linalg.eigvalsh(kernel_matrix(matern, X.points))[0] > 0
