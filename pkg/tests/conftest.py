import json
from pathlib import Path

import pytest

from geometry import DomainRegion, PointSet, generate_quasi_uniform
from kernels import KernelFamily, KernelSpec, thin_plate


@pytest.fixture(scope="session")
def unit_square() -> DomainRegion:
    return DomainRegion.unit_cube(2)


@pytest.fixture(scope="session")
def tps() -> KernelSpec:
    return thin_plate(2)


@pytest.fixture(scope="session")
def matern() -> KernelSpec:
    return KernelSpec(family=KernelFamily.MATERN, m=2, d=2)


@pytest.fixture(scope="session")
def square_points(unit_square: DomainRegion) -> PointSet:
    return generate_quasi_uniform(unit_square, 100, seed=1)


@pytest.fixture
def write_config(tmp_path: Path):
    def _write(**fields) -> Path:
        path = tmp_path / "config.json"
        path.write_text(json.dumps(fields))
        return path

    return _write
