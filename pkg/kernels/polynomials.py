from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from kernels.spec import KernelSpec
from utils.errors import InvalidInputError


@dataclass(frozen=True, eq=False)
class PolynomialBasis:
    """Monomials x^alpha with |alpha| <= degree in graded-lexicographic order.

    ``degree = -1`` is the trivial space (N = 0) used by positive definite kernels.
    """

    degree: int
    d: int
    exponents: np.ndarray

    @property
    def N(self) -> int:
        return len(self.exponents)


@lru_cache(maxsize=None)
def monomial_basis(degree: int, d: int) -> PolynomialBasis:
    exps = []
    for total in range(degree + 1):
        layer = [alpha for alpha in product(range(total + 1), repeat=d) if sum(alpha) == total]
        exps.extend(sorted(layer, reverse=True))
    exponents = np.array(exps, dtype=int).reshape(-1, d)
    exponents.setflags(write=False)
    return PolynomialBasis(degree=degree, d=d, exponents=exponents)


def polynomial_basis(spec: KernelSpec) -> PolynomialBasis:
    degree = spec.cpd_degree
    return monomial_basis(-1 if degree is None else degree, spec.d)


def vandermonde(basis: PolynomialBasis, points: np.ndarray) -> np.ndarray:
    """Matrix Phi with Phi[i, j] = phi_j(points[i])."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if basis.N == 0:
        return np.zeros((len(pts), 0))
    return np.prod(pts[:, None, :] ** basis.exponents[None, :, :], axis=2)


def poly_eval(basis: PolynomialBasis, j: int, x: np.ndarray) -> float:
    if not 0 <= j < basis.N:
        raise InvalidInputError(f"polynomial index {j} out of range for N={basis.N}")
    return float(np.prod(np.asarray(x, dtype=float) ** basis.exponents[j]))
