import numpy as np

from kernels.radial import radial_profile
from kernels.spec import KernelSpec
from utils.errors import InvalidInputError, UnsupportedError


def kernel_sobolev_norm_estimate(
    spec: KernelSpec,
    sigma: int,
    p: float,
    R: float,
    grid: int,
    amplitude: float = 1.0,
) -> float:
    """Discrete W_p^sigma(B(0, R)) norm of ``amplitude * k(., 0)``.

    The kernel is sampled at the cell midpoints of a ``grid^d`` lattice over [-R, R]^d,
    derivatives are central differences of the sampled array and the integral is the midpoint
    rule restricted to the ball. Only meant for boundedness and growth diagnostics; the
    discretization error is O(1/grid).
    """
    if sigma not in (0, 1, 2):
        raise UnsupportedError(f"sigma must be 0, 1 or 2, got {sigma}")
    if grid < 16:
        raise InvalidInputError(f"grid must be at least 16, got {grid}")
    if R <= 0 or p < 1:
        raise InvalidInputError(f"need R > 0 and p >= 1, got R={R}, p={p}")
    d = spec.d
    step = 2 * R / grid
    axis = -R + (np.arange(grid) + 0.5) * step
    mesh = np.meshgrid(*[axis] * d, indexing="ij")
    r = np.sqrt(sum(c * c for c in mesh))
    values = amplitude * radial_profile(spec, r)
    inside = r <= R
    cell = step**d

    tables = [values]
    if sigma >= 1:
        first = np.gradient(values, step) if d > 1 else [np.gradient(values, step)]
        tables.extend(first)
        if sigma == 2:
            for g in first:
                second = np.gradient(g, step) if d > 1 else [np.gradient(g, step)]
                tables.extend(second)
    if np.isinf(p):
        return float(max(np.max(np.abs(t[inside])) for t in tables))
    total = sum(np.sum(np.abs(t[inside]) ** p) * cell for t in tables)
    return float(total ** (1.0 / p))
