from itertools import combinations
from typing import Callable, Iterator, Tuple, Union

import numpy as np

from diagnostics.quadrature import QuadratureGrid
from diagnostics.settings import diagnostics_settings
from interpolation.expansion import Expansion, ExpansionFamily, check_side_conditions, native_inner
from kernels.radial import kernel_matrix
from kernels.spec import KernelSpec
from utils.errors import UnsupportedError

Evaluatable = Callable[[np.ndarray], np.ndarray]
Sigma = Union[int, str]

SUPPORTED_SIGMA = (0, 1, 2)


def _evaluate(f: Evaluatable, points: np.ndarray) -> np.ndarray:
    step = diagnostics_settings.eval_chunk
    parts = [np.asarray(f(points[i : i + step]), dtype=float) for i in range(0, len(points), step)]
    return np.concatenate(parts, axis=0)


def _derivative_fields(f: Evaluatable, grid: QuadratureGrid, sigma: int) -> Iterator[Tuple[float, np.ndarray]]:
    """Yield (multiplicity, values) for every derivative of order <= sigma at the grid nodes.

    Values are central differences with step ``grid.fd_step``. Mixed second derivatives are
    yielded once with multiplicity 2, so the sum over the full derivative tensor is recovered.
    """
    x = grid.nodes
    d = x.shape[1]
    s = grid.fd_step
    eye = np.eye(d) * s
    f0 = _evaluate(f, x)
    yield 1.0, f0
    if sigma == 0:
        return
    plus = [_evaluate(f, x + eye[i]) for i in range(d)]
    minus = [_evaluate(f, x - eye[i]) for i in range(d)]
    for i in range(d):
        yield 1.0, (plus[i] - minus[i]) / (2 * s)
    if sigma == 1:
        return
    for i in range(d):
        yield 1.0, (plus[i] - 2 * f0 + minus[i]) / (s * s)
    for i, j in combinations(range(d), 2):
        mixed = (
            _evaluate(f, x + eye[i] + eye[j])
            - _evaluate(f, x + eye[i] - eye[j])
            - _evaluate(f, x - eye[i] + eye[j])
            + _evaluate(f, x - eye[i] - eye[j])
        ) / (4 * s * s)
        yield 2.0, mixed


def _check_sigma(sigma: Sigma) -> int:
    if sigma not in SUPPORTED_SIGMA:
        raise UnsupportedError(f"sigma must be one of {SUPPORTED_SIGMA}, got {sigma}")
    return int(sigma)


def sobolev_norm_fd(f: Evaluatable, sigma: int, grid: QuadratureGrid) -> float:
    """Discrete W_2^sigma(Ω) norm with midpoint quadrature and central differences; error O(δ^2)."""
    sigma = _check_sigma(sigma)
    total = 0.0
    for mult, values in _derivative_fields(f, grid, sigma):
        total += mult * float(np.sum(grid.weights * values * values))
    return float(np.sqrt(total))


def l2_norm(f: Evaluatable, grid: QuadratureGrid) -> float:
    return sobolev_norm_fd(f, 0, grid)


def lp_norm(f: Evaluatable, grid: QuadratureGrid, p: float) -> float:
    values = np.abs(_evaluate(f, grid.nodes))
    if np.isinf(p):
        return float(np.max(values))
    return float(np.sum(grid.weights * values**p) ** (1.0 / p))


def energy_norm(spec: KernelSpec, f: Expansion) -> float:
    """Native seminorm sqrt(a^T K a); raises InvalidInputError when side conditions fail."""
    return float(np.sqrt(max(native_inner(spec, f, f), 0.0)))


def energy_gram(family: ExpansionFamily) -> np.ndarray:
    """C^T K C, the native-space Gram matrix of a family."""
    for j in range(family.size):
        check_side_conditions(family.column(j))
    K = kernel_matrix(family.spec, family.centers)
    G = family.kernel_coeffs.T @ K @ family.kernel_coeffs
    return (G + G.T) / 2


def norm_gram(family: ExpansionFamily, sigma: Sigma, grid: QuadratureGrid) -> np.ndarray:
    """Gram matrix G with a^T G a = ‖Σ a_j v_j‖^2 in W_2^sigma, or in the native space for sigma='m'."""
    if sigma == "m":
        return energy_gram(family)
    sigma = _check_sigma(sigma)
    G = np.zeros((family.size, family.size))
    for mult, values in _derivative_fields(family, grid, sigma):
        G += mult * (values.T @ (grid.weights[:, None] * values))
    return G
