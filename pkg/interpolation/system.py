from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import LinearOperator, onenormest

from geometry.points import PointSet
from interpolation.settings import interpolation_settings
from kernels.polynomials import PolynomialBasis, polynomial_basis, vandermonde
from kernels.radial import kernel_matrix
from kernels.spec import KernelSpec
from utils.errors import NonUnisolventError, SingularSystemError
from utils.log import logger


@dataclass(eq=False)
class SaddleSystem:
    """The block system [[K, Phi], [Phi^T, 0]] on a set of centers with its LDL^T factorization.

    One factorization serves every right-hand side; ``solve`` only reads it, so independent solves
    may run concurrently.
    """

    spec: KernelSpec
    points: np.ndarray
    basis: PolynomialBasis
    K: np.ndarray
    Phi: np.ndarray
    condition: float
    _lower: np.ndarray
    _band: np.ndarray
    _perm: np.ndarray

    @property
    def n(self) -> int:
        return self.K.shape[0]

    @property
    def N(self) -> int:
        return self.Phi.shape[1]

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve the block system for one (n+N,) or several (n+N, k) right-hand sides."""
        b = np.asarray(rhs, dtype=float)
        y = linalg.solve_triangular(self._lower, b[self._perm], lower=True, unit_diagonal=True)
        z = linalg.solve_banded((1, 1), self._band, y)
        w = linalg.solve_triangular(self._lower.T, z, lower=False, unit_diagonal=True)
        x = np.empty_like(w)
        x[self._perm] = w
        return x


def _band_of(D: np.ndarray) -> np.ndarray:
    n = D.shape[0]
    band = np.zeros((3, n))
    band[1] = np.diag(D)
    if n > 1:
        band[0, 1:] = np.diag(D, 1)
        band[2, :-1] = np.diag(D, -1)
    return band


def check_unisolvent(basis: PolynomialBasis, points: np.ndarray) -> np.ndarray:
    """Return Phi for ``points`` or raise when it does not have full column rank."""
    Phi = vandermonde(basis, points)
    if basis.N == 0:
        return Phi
    rank = np.linalg.matrix_rank(Phi) if len(points) >= basis.N else len(points)
    if rank < basis.N:
        raise NonUnisolventError(
            f"{len(points)} points are not unisolvent for polynomials of degree {basis.degree} "
            f"(rank {rank} < {basis.N})"
        )
    return Phi


def assemble(spec: KernelSpec, X: Union[PointSet, np.ndarray]) -> SaddleSystem:
    """Assemble and factorize the collocation system of ``spec`` on ``X``.

    Raises:
        NonUnisolventError: Phi is rank deficient.
        SingularSystemError: the factorization breaks down or the condition estimate exceeds
            ``condition_max``.
    """
    points = X.points if isinstance(X, PointSet) else np.atleast_2d(np.asarray(X, dtype=float))
    basis = polynomial_basis(spec)
    Phi = check_unisolvent(basis, points)
    K = kernel_matrix(spec, points)
    n, N = K.shape[0], basis.N
    M = np.zeros((n + N, n + N))
    M[:n, :n] = K
    M[:n, n:] = Phi
    M[n:, :n] = Phi.T

    lu, D, perm = linalg.ldl(M, lower=True, hermitian=True)
    system = SaddleSystem(
        spec=spec,
        points=points,
        basis=basis,
        K=K,
        Phi=Phi,
        condition=np.inf,
        _lower=lu[perm],
        _band=_band_of(D),
        _perm=perm,
    )
    try:
        inverse = LinearOperator(M.shape, matvec=system.solve, rmatvec=system.solve, dtype=float)
        inv_norm = onenormest(inverse) if n + N > 1 else abs(float(system.solve(np.ones(1))[0]))
    except (linalg.LinAlgError, ValueError) as e:
        raise SingularSystemError(f"factorization of the {n + N}x{n + N} saddle system failed: {e}") from e
    system.condition = float(np.linalg.norm(M, 1) * inv_norm)
    if not np.isfinite(system.condition) or system.condition > interpolation_settings.condition_max:
        raise SingularSystemError(
            f"saddle system on {n} centers is numerically singular (condition ~ {system.condition:.3e})"
        )
    if system.condition > interpolation_settings.condition_warn:
        logger.warning(f"Saddle system on {n} centers is ill-conditioned (condition ~ {system.condition:.3e})")
    logger.debug(f"Assembled {spec.label} system: n={n}, N={N}, condition ~ {system.condition:.3e}")
    return system
