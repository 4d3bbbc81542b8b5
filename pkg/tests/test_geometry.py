from math import pi, sqrt

import numpy as np
import pytest
from scipy.spatial.distance import pdist

from geometry import (
    DomainRegion,
    PointSet,
    boundary_regularity_probe,
    extend_pointset,
    fill_distance,
    footprint,
    footprint_radius,
    footprint_size_bound,
    generate_quasi_uniform,
    geometry_stats,
    read_pointset,
    separation_radius,
    unit_ball_volume,
    write_pointset,
)
from geometry.settings import geometry_settings
from utils.errors import InvalidInputError


def test_unit_ball_volume():
    assert unit_ball_volume(1) == pytest.approx(2.0)
    assert unit_ball_volume(2) == pytest.approx(pi)
    assert unit_ball_volume(3) == pytest.approx(4 * pi / 3)


def test_box_contains_and_volume(unit_square):
    assert unit_square.volume() == pytest.approx(1.0)
    inside = unit_square.contains(np.array([[0.0, 0.0], [0.5, 1.0], [1.0001, 0.5]]))
    assert inside.tolist() == [True, True, False]


def test_dilated_box_uses_steiner_volume(unit_square):
    w = 0.1
    region = unit_square.dilated(w)
    assert region.volume() == pytest.approx(1 + 4 * w + pi * w**2)
    assert region.contains(np.array([[1 + w / 2, 0.5]]))[0]
    assert not region.contains(np.array([[1 + w, 1 + w]]))[0]
    assert region.core() == unit_square


def test_invalid_domains():
    with pytest.raises(ValueError):
        DomainRegion.box([0.0, 1.0], [1.0, 0.5])
    with pytest.raises(ValueError):
        DomainRegion.ball([0.0, 0.0], -1.0)
    with pytest.raises(InvalidInputError):
        DomainRegion.unit_cube(2).dilated(0.0)


def test_separation_and_fill_distance(unit_square):
    X = PointSet(np.array([[0.0, 0.0], [0.5, 0.0], [1.0, 1.0]]), unit_square)
    assert separation_radius(X) == pytest.approx(0.25)
    single = PointSet(np.array([[0.5, 0.5]]), unit_square)
    assert fill_distance(single) == pytest.approx(sqrt(0.5))


def test_fill_distance_refines_a_lattice_that_misses_the_domain(monkeypatch):
    ball = DomainRegion.ball([0.0, 0.0], 1.0)
    X = PointSet(np.array([[0.0, 0.0]]), ball)
    # the 2-per-axis lattice is just the four corners of the bounding box
    assert fill_distance(X, ball, probe_density=2) == pytest.approx(sqrt(2) / 3)
    monkeypatch.setattr(geometry_settings, "max_probe_density", 2)
    with pytest.raises(InvalidInputError):
        fill_distance(X, ball, probe_density=2)


def test_duplicate_points_rejected(unit_square):
    with pytest.raises(InvalidInputError):
        PointSet(np.array([[0.1, 0.1], [0.1, 0.1]]), unit_square)


def test_quasi_uniform_generator(unit_square):
    X = generate_quasi_uniform(unit_square, 100, seed=3)
    assert len(X) == 100
    assert np.all(unit_square.contains(X.points))
    assert np.array_equal(X.points, generate_quasi_uniform(unit_square, 100, seed=3).points)
    assert not np.array_equal(X.points, generate_quasi_uniform(unit_square, 100, seed=4).points)
    stats = geometry_stats(X)
    assert stats.rho == pytest.approx(stats.h / stats.q)
    assert stats.rho <= 4.0


@pytest.mark.parametrize("n", [25, 50, 100, 200, 400, 800, 1600])
def test_quasi_uniform_mesh_ratio_for_any_count(unit_square, n):
    for seed in range(3):
        X = generate_quasi_uniform(unit_square, n, seed=seed)
        assert len(X) == n
        assert geometry_stats(X).rho <= 4.0


def test_quasi_uniform_in_a_cube():
    cube = DomainRegion.unit_cube(3)
    X = generate_quasi_uniform(cube, 50, seed=0)
    assert len(X) == 50
    assert np.all(cube.contains(X.points))


def test_quasi_uniform_in_ball_and_uneven_counts(unit_square):
    ball = DomainRegion.ball([0.0, 0.0], 1.0)
    X = generate_quasi_uniform(ball, 50, seed=0)
    assert len(X) == 50
    assert np.all(ball.contains(X.points))
    assert len(generate_quasi_uniform(unit_square, 50, seed=0)) == 50
    assert np.allclose(generate_quasi_uniform(unit_square, 1, seed=0).points, [[0.5, 0.5]])


def test_extension_keeps_xi_and_covers_collar(unit_square):
    Xi = generate_quasi_uniform(unit_square, 64, seed=2)
    width = 0.2
    X = extend_pointset(Xi, unit_square, width)
    assert np.array_equal(X.points[: len(Xi)], Xi.points)
    assert np.sum(unit_square.contains(X.points)) == len(Xi)
    assert np.all(X.domain.contains(X.points))
    assert np.all(unit_square.distance_to_core(X.points) <= width + 1e-12)

    density = 200
    # a spacing above the lattice gap of Omega, so the net uses exactly this h
    h = 1.1 * fill_distance(Xi, unit_square, density)
    X = extend_pointset(Xi, unit_square, width, h=h, probe_density=density)
    assert separation_radius(X) >= min(separation_radius(Xi), h / 2) - 1e-12
    assert fill_distance(X, X.domain, density) <= h * (1 + 1 / density)


def test_extension_of_dense_set_adds_nothing(unit_square):
    Xi = generate_quasi_uniform(unit_square, 100, seed=0)
    X = extend_pointset(Xi, unit_square, 0.01, h=0.5)
    assert np.array_equal(X.points, Xi.points)


def test_extension_of_single_point_is_an_h_net(unit_square):
    Xi = PointSet(np.array([[0.5, 0.5]]), unit_square)
    h = 0.25
    X = extend_pointset(Xi, unit_square, 1.0, h=h, probe_density=100)
    added = X.points[1:]
    assert len(added) > 0
    assert np.all(unit_square.distance_to_core(added) > 0)
    assert np.min(pdist(X.points)) >= h - 1e-12


def test_extension_rejects_points_outside(unit_square):
    Xi = PointSet(np.array([[0.5, 0.5], [1.5, 0.5]]), unit_square.dilated(1.0))
    with pytest.raises(InvalidInputError):
        extend_pointset(Xi, unit_square, 0.1)


def test_footprint_closed_ball(unit_square):
    X = PointSet(np.array([[0.0, 0.0], [0.1, 0.0], [0.2, 0.0], [0.5, 0.5]]), unit_square)
    fp = footprint(X, 1, K=1.0, h=0.1)
    assert fp.radius == pytest.approx(footprint_radius(1.0, 0.1))
    assert fp.member_indices.tolist() == [0, 1, 2]
    assert fp.local_center == 1
    assert len(fp) == 3
    with pytest.raises(InvalidInputError):
        footprint(X, 0, K=1.0, h=1.5)
    with pytest.raises(InvalidInputError):
        footprint(X, 7, K=1.0, h=0.1)


def test_footprint_size_bound(square_points):
    stats = geometry_stats(square_points)
    ratio = footprint_size_bound(square_points, list(range(10)), K=1.0, h=stats.h, rho=stats.rho)
    assert 0 < ratio < 100


def test_pointset_csv(tmp_path, square_points, unit_square):
    path = tmp_path / "xi.csv"
    write_pointset(square_points, path)
    assert path.read_text().splitlines()[0] == "# d=2"
    back = read_pointset(path, unit_square)
    assert np.array_equal(back.points, square_points.points)


def test_boundary_regularity_of_square(unit_square):
    alpha = boundary_regularity_probe(unit_square, 0.1, samples=40_000, seed=0)
    # a corner keeps a quarter of every small ball
    assert alpha == pytest.approx(unit_ball_volume(2) / 4, rel=0.05)
    with pytest.raises(InvalidInputError):
        boundary_regularity_probe(unit_square, 2.0)
