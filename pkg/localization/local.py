from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import log
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from geometry.footprint import Footprint, footprint
from geometry.points import PointSet, fill_distance
from interpolation.lagrange import BasisVariant, LagrangeFunction, solve_full_lagrange
from interpolation.system import assemble
from kernels.spec import KernelSpec
from localization.settings import localization_settings
from utils.errors import FootprintError, InvalidInputError, NonUnisolventError, NumericalError
from utils.log import logger


@dataclass(frozen=True, eq=False)
class LocalLagrange(LagrangeFunction):
    """Cardinal interpolant solved on the footprint only."""

    footprint: Footprint


def solve_local_lagrange(spec: KernelSpec, X: PointSet, ups: Footprint) -> LocalLagrange:
    """Solve the saddle system of the footprint with data delta_{xi, zeta}.

    Raises:
        NonUnisolventError: the footprint is not unisolvent for the polynomial space.
        SingularSystemError: the footprint system cannot be factorized.
    """
    pts = X.points[ups.member_indices]
    try:
        system = assemble(spec, pts)
    except NonUnisolventError as e:
        raise NonUnisolventError(
            f"footprint of center {ups.center_index} ({len(ups)} points, K={ups.K:g}) is not unisolvent: {e}; "
            f"increase K"
        ) from e
    chi = solve_full_lagrange(system, ups.local_center)
    return LocalLagrange(
        spec=spec,
        centers=pts,
        kernel_coeffs=chi.kernel_coeffs,
        poly_coeffs=chi.poly_coeffs,
        center=ups.center_index,
        support=ups.member_indices,
        variant=BasisVariant.LOCAL,
        footprint=ups,
        condition=system.condition,
    )


def suggest_K(spec: KernelSpec, nu_hat: float, tau: float = 0.0) -> float:
    """K = 4 (2m + tau + 1 - d) / nu_hat plus the configured margin."""
    if nu_hat <= 0:
        raise InvalidInputError(f"decay rate must be positive, got {nu_hat}")
    return 4.0 * (2 * spec.m + tau + 1 - spec.d) / nu_hat + localization_settings.K_margin


def build_local_basis(
    spec: KernelSpec,
    X: PointSet,
    xi_indices: Optional[Sequence[int]] = None,
    K: Optional[float] = None,
    h: Optional[float] = None,
    threads: Optional[int] = None,
) -> List[LocalLagrange]:
    """Local Lagrange functions for the centers ``xi_indices`` of ``X`` (default: all).

    Args:
        spec: Kernel of the local solves.
        X: Full (possibly extended) point set.
        xi_indices: Centers to build, results come back in this order.
        K: Footprint parameter, defaults to ``localization_settings.default_K``.
        h: Fill distance used for footprint radii, defaults to the measured fill distance of X
            over its own domain.
        threads: Worker threads, defaults to ``localization_settings.threads``.

    Raises:
        FootprintError: one or more footprints failed; ``indices`` lists them.
    """
    indices = list(range(len(X))) if xi_indices is None else [int(i) for i in xi_indices]
    K = localization_settings.default_K if K is None else float(K)
    h = fill_distance(X) if h is None else float(h)
    if not 0 < h < 1:
        raise InvalidInputError(f"local bases need 0 < h < 1, got h={h}")
    threads = threads or localization_settings.threads
    radius = K * h * abs(log(h))
    logger.info(f"Building {len(indices)} local Lagrange functions (K={K:g}, h={h:.4g}, radius={radius:.4g})")

    def task(xi: int) -> Tuple[int, Union[LocalLagrange, str]]:
        try:
            return xi, solve_local_lagrange(spec, X, footprint(X, xi, K, h))
        except NumericalError as e:
            return xi, str(e)

    with ThreadPoolExecutor(max_workers=threads) as executor:
        results = list(executor.map(task, indices))

    failures: Dict[int, str] = {xi: r for xi, r in results if isinstance(r, str)}
    if failures:
        raise FootprintError(failures)
    return [r for _, r in results if isinstance(r, LocalLagrange)]
