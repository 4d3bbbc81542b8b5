from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from interpolation.expansion import Expansion, ExpansionFamily
from interpolation.system import SaddleSystem
from utils.errors import InvalidInputError


class BasisVariant(str, Enum):
    FULL = "full"
    TRUNCATED = "truncated"
    LOCAL = "local"


@dataclass(frozen=True, eq=False)
class LagrangeFunction(Expansion):
    """A cardinal function for ``center``.

    ``support`` holds the indices (into the point set the basis was built on) of ``centers``,
    so ``kernel_coeffs[i]`` is the coefficient A_{support[i], center}.
    """

    center: int
    support: np.ndarray
    variant: BasisVariant

    @property
    def center_point(self) -> np.ndarray:
        pos = int(np.flatnonzero(self.support == self.center)[0])
        return self.centers[pos]

    def coefficient_map(self) -> dict:
        return {int(z): float(a) for z, a in zip(self.support, self.kernel_coeffs)}


@dataclass(frozen=True, eq=False)
class CoefficientMatrix:
    """A[xi, zeta] = <chi_xi, chi_zeta> in the native space."""

    A: np.ndarray

    def symmetry_error(self) -> float:
        """max |A - A^T| relative to max |A|."""
        return float(np.max(np.abs(self.A - self.A.T)) / max(np.max(np.abs(self.A)), 1e-300))


def _unit_rhs(sys: SaddleSystem, indices: Sequence[int]) -> np.ndarray:
    idx = np.asarray(indices, dtype=int)
    if np.any(idx < 0) or np.any(idx >= sys.n):
        raise InvalidInputError(f"center indices out of range for {sys.n} centers")
    rhs = np.zeros((sys.n + sys.N, len(idx)))
    rhs[idx, np.arange(len(idx))] = 1.0
    return rhs


def solve_full_lagrange(sys: SaddleSystem, xi: int) -> LagrangeFunction:
    """Lagrange function chi_xi on all centers of ``sys``: right-hand side (e_xi, 0)."""
    return solve_full_basis(sys, [xi])[0]


def solve_full_basis(sys: SaddleSystem, indices: Optional[Sequence[int]] = None) -> List[LagrangeFunction]:
    """Lagrange functions for ``indices`` (default: every center) from one multi-column solve."""
    indices = list(range(sys.n)) if indices is None else [int(i) for i in indices]
    solution = sys.solve(_unit_rhs(sys, indices))
    support = np.arange(sys.n)
    return [
        LagrangeFunction(
            spec=sys.spec,
            centers=sys.points,
            kernel_coeffs=solution[: sys.n, j].copy(),
            poly_coeffs=solution[sys.n :, j].copy(),
            center=xi,
            support=support,
            variant=BasisVariant.FULL,
            condition=sys.condition,
        )
        for j, xi in enumerate(indices)
    ]


def full_basis_family(sys: SaddleSystem, indices: Optional[Sequence[int]] = None) -> ExpansionFamily:
    """The Lagrange functions for ``indices`` as one coefficient-matrix family over all centers."""
    indices = list(range(sys.n)) if indices is None else [int(i) for i in indices]
    solution = sys.solve(_unit_rhs(sys, indices))
    return ExpansionFamily(sys.spec, sys.points, solution[: sys.n], solution[sys.n :], condition=sys.condition)


def full_coefficient_matrix(sys: SaddleSystem) -> CoefficientMatrix:
    """Top-left n x n block of the inverse saddle matrix."""
    return CoefficientMatrix(A=sys.solve(_unit_rhs(sys, range(sys.n)))[: sys.n])


def family_from_functions(functions: Sequence[LagrangeFunction], points: np.ndarray) -> ExpansionFamily:
    """Scatter per-function coefficients onto the shared center set ``points``."""
    if not functions:
        raise InvalidInputError("cannot build a family from no functions")
    spec = functions[0].spec
    C = np.zeros((len(points), len(functions)))
    P = np.zeros((len(functions[0].poly_coeffs), len(functions)))
    for j, f in enumerate(functions):
        np.add.at(C[:, j], f.support, f.kernel_coeffs)
        P[:, j] = f.poly_coeffs
    return ExpansionFamily(spec, np.asarray(points), C, P, condition=max(f.condition for f in functions))
