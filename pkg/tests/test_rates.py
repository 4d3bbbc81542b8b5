import pytest

from diagnostics import bernstein_sweep, build_level, decay_sweep, local_error_sweep, synthesis_norm_check

pytestmark = pytest.mark.slow


def test_bernstein_first_order_slope(tps, unit_square):
    report = bernstein_sweep(tps, unit_square, [100, 200, 400, 800], 1, K=4.0, trials=20, seed=0)
    assert report.target == -1.0
    assert report.passed, report.slope


def test_bernstein_energy_slope(tps, unit_square):
    report = bernstein_sweep(tps, unit_square, [100, 200, 400, 800], "m", K=4.0, trials=20, seed=0)
    assert report.target == -2.0
    assert report.passed, report.slope


def test_synthesis_exponent_of_the_full_basis(tps, unit_square):
    levels = [build_level(tps, unit_square, n, seed=0, K=4.0) for n in (100, 200, 400)]
    report = synthesis_norm_check(levels, 0, trials=20, seed=0)
    assert report.target == 1.0
    assert report.passed, report.slope


@pytest.mark.parametrize("kernel", ["tps", "matern"])
def test_pointwise_decay_is_stationary(kernel, request, unit_square):
    spec = request.getfixturevalue(kernel)
    pointwise = decay_sweep(spec, unit_square, [150, 600, 2400], seed=0)[0]
    assert all(nu > 0 for nu in pointwise.details["nu_hat"])
    assert min(pointwise.details["r_squared"]) >= 0.9
    assert pointwise.details["drift"] <= 0.25


def test_local_basis_error_decays_exponentially_in_K(tps, unit_square):
    report = local_error_sweep(tps, unit_square, 400, [2.0, 3.0, 4.0, 5.0], seed=0)
    assert report.slope < 0
    assert report.r_squared >= 0.9
