from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from interpolation.settings import interpolation_settings
from kernels.polynomials import polynomial_basis, vandermonde
from kernels.radial import kernel_matrix
from kernels.spec import KernelSpec
from utils.errors import InvalidInputError


def evaluate_expansion(
    spec: KernelSpec,
    centers: np.ndarray,
    coeffs: np.ndarray,
    poly: Optional[np.ndarray],
    x: np.ndarray,
) -> Union[float, np.ndarray]:
    """Evaluate sum_z a_z k(x, z) + sum_j c_j phi_j(x).

    ``coeffs`` may be a vector or a matrix with one column per function; ``x`` may be a single
    point (returns a float, or a row for matrix coefficients) or an array of points.
    """
    single = np.ndim(x) == 1
    pts = np.atleast_2d(np.asarray(x, dtype=float))
    coeffs = np.asarray(coeffs, dtype=float)
    basis = polynomial_basis(spec)
    out_shape = (len(pts),) + coeffs.shape[1:]
    out = np.zeros(out_shape)
    step = interpolation_settings.eval_chunk
    for start in range(0, len(pts), step):
        chunk = pts[start : start + step]
        if len(centers):
            out[start : start + step] = kernel_matrix(spec, chunk, centers) @ coeffs
        if poly is not None and basis.N:
            out[start : start + step] += vandermonde(basis, chunk) @ np.asarray(poly, dtype=float)
    if single:
        return float(out[0]) if out.ndim == 1 else out[0]
    return out


@dataclass(frozen=True, eq=False)
class Expansion:
    """A kernel expansion sum_z a_z k(., z) + p over explicit centers.

    ``condition`` is the condition estimate of the system the coefficients were solved from; it
    scales the tolerance of the side-condition check.
    """

    spec: KernelSpec
    centers: np.ndarray
    kernel_coeffs: np.ndarray
    poly_coeffs: np.ndarray
    condition: float = field(default=1.0, kw_only=True)

    def __call__(self, x: np.ndarray) -> Union[float, np.ndarray]:
        return evaluate_expansion(self.spec, self.centers, self.kernel_coeffs, self.poly_coeffs, x)

    def side_residual(self) -> float:
        """max_j |sum_z a_z phi_j(z)| relative to the natural scale sum |a_z| max |phi_j(z)|."""
        Phi = vandermonde(polynomial_basis(self.spec), self.centers)
        if Phi.shape[1] == 0 or len(self.kernel_coeffs) == 0:
            return 0.0
        residual = np.abs(Phi.T @ self.kernel_coeffs)
        scale = np.sum(np.abs(self.kernel_coeffs)) * max(float(np.max(np.abs(Phi))), 1.0)
        return float(np.max(residual) / max(scale, 1e-300))


def side_condition_tolerance(condition: float = 1.0) -> float:
    """Relative side-condition tolerance for coefficients solved at the given condition estimate."""
    return max(interpolation_settings.side_condition_rtol, float(np.finfo(float).eps) * condition)


def check_side_conditions(f: Expansion, rtol: Optional[float] = None) -> None:
    rtol = side_condition_tolerance(f.condition) if rtol is None else rtol
    residual = f.side_residual()
    if residual > rtol:
        raise InvalidInputError(f"kernel coefficients violate the polynomial side conditions (relative {residual:.3e})")


def native_inner(spec: KernelSpec, f: Expansion, g: Expansion, rtol: Optional[float] = None) -> float:
    """Native-space inner product (a^f)^T K a^g over the union of the two center sets.

    Polynomial parts lie in the null space of the semi-norm and do not contribute.
    """
    check_side_conditions(f, rtol)
    check_side_conditions(g, rtol)
    if len(f.centers) == 0 or len(g.centers) == 0:
        return 0.0
    return float(f.kernel_coeffs @ kernel_matrix(spec, f.centers, g.centers) @ g.kernel_coeffs)


@dataclass(frozen=True, eq=False)
class ExpansionFamily:
    """Many expansions over one shared center set, stored as coefficient matrices.

    Column ``j`` of ``kernel_coeffs`` (n_centers x n_functions) and of ``poly_coeffs``
    (N x n_functions) describe function ``j``.
    """

    spec: KernelSpec
    centers: np.ndarray
    kernel_coeffs: np.ndarray
    poly_coeffs: np.ndarray
    condition: float = field(default=1.0, kw_only=True)

    @property
    def size(self) -> int:
        return self.kernel_coeffs.shape[1]

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(evaluate_expansion(self.spec, self.centers, self.kernel_coeffs, self.poly_coeffs, x))

    def column(self, j: int) -> Expansion:
        return Expansion(
            self.spec, self.centers, self.kernel_coeffs[:, j], self.poly_coeffs[:, j], condition=self.condition
        )

    def combine(self, a: np.ndarray) -> Expansion:
        """The expansion sum_j a_j v_j."""
        a = np.asarray(a, dtype=float)
        return Expansion(
            self.spec, self.centers, self.kernel_coeffs @ a, self.poly_coeffs @ a, condition=self.condition
        )

