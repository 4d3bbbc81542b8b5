from dataclasses import dataclass

import numpy as np

from geometry.footprint import Footprint
from interpolation.lagrange import BasisVariant, LagrangeFunction
from kernels.polynomials import PolynomialBasis
from localization.projector import gram_projector
from utils.errors import InvalidInputError


@dataclass(frozen=True, eq=False)
class TruncationResult:
    """Coefficients of a full Lagrange function restricted to a footprint and corrected.

    ``raw`` and ``corrected`` are ordered like ``footprint.member_indices``.
    """

    footprint: Footprint
    raw: np.ndarray
    corrected: np.ndarray
    tail_l1: float
    correction_l2: float
    function: LagrangeFunction


def _positions(chi: LagrangeFunction, members: np.ndarray) -> np.ndarray:
    order = np.argsort(chi.support)
    pos = np.searchsorted(chi.support, members, sorter=order)
    pos = order[np.minimum(pos, len(order) - 1)]
    if np.any(chi.support[pos] != members):
        raise InvalidInputError(f"footprint of center {chi.center} is not contained in the support of chi")
    return pos


def truncate_lagrange(chi: LagrangeFunction, ups: Footprint, basis: PolynomialBasis) -> TruncationResult:
    """Truncate ``chi`` to the footprint ``ups`` and restore the side conditions by P^⊥.

    The truncated function keeps the polynomial part of ``chi``.
    """
    if chi.variant != BasisVariant.FULL:
        raise InvalidInputError(f"only full Lagrange functions can be truncated, got {chi.variant.value}")
    if ups.center_index != chi.center:
        raise InvalidInputError(f"footprint of center {ups.center_index} used for chi of center {chi.center}")
    pos = _positions(chi, ups.member_indices)
    raw = chi.kernel_coeffs[pos].copy()
    outside = np.ones(len(chi.kernel_coeffs), dtype=bool)
    outside[pos] = False
    tail_l1 = float(np.sum(np.abs(chi.kernel_coeffs[outside])))

    centers = chi.centers[pos]
    if basis.N == 0:
        corrected = raw.copy()
    else:
        corrected = gram_projector(basis, centers).complement(raw)
    function = LagrangeFunction(
        spec=chi.spec,
        centers=centers,
        kernel_coeffs=corrected,
        poly_coeffs=chi.poly_coeffs.copy(),
        center=chi.center,
        support=ups.member_indices,
        variant=BasisVariant.TRUNCATED,
        condition=chi.condition,
    )
    return TruncationResult(
        footprint=ups,
        raw=raw,
        corrected=corrected,
        tail_l1=tail_l1,
        correction_l2=float(np.linalg.norm(raw - corrected)),
        function=function,
    )


def truncation_error(chi: LagrangeFunction, result: TruncationResult, points: np.ndarray) -> float:
    """max over ``points`` of |chi - chi_truncated|."""
    return float(np.max(np.abs(np.asarray(chi(points)) - np.asarray(result.function(points)))))
