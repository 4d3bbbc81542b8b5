from dataclasses import dataclass
from math import log
from typing import List, Optional, Tuple, Union

import numpy as np

from diagnostics.fits import DecayFit, fit_pointwise_decay
from diagnostics.quadrature import QuadratureGrid
from geometry.domain import DomainRegion
from geometry.extension import extend_pointset
from geometry.points import PointSet, fill_distance, generate_quasi_uniform, separation_radius
from interpolation.expansion import ExpansionFamily
from interpolation.lagrange import BasisVariant, LagrangeFunction, family_from_functions
from kernels.spec import KernelSpec
from localization.local import suggest_K
from localization.operator import get_basis
from localization.settings import localization_settings
from utils.log import logger


@dataclass(eq=False)
class SweepLevel:
    """One refinement level of a sweep: Ξ in Ω, the (extended) set X and the basis of Ξ on X.

    The first ``len(Xi)`` points of ``X`` are Ξ, so basis function ``j`` belongs to ``X[j]``.
    """

    spec: KernelSpec
    Omega: DomainRegion
    Xi: PointSet
    X: PointSet
    h: float
    q: float
    variant: BasisVariant
    K: float
    functions: List[LagrangeFunction]
    family: ExpansionFamily
    grid: QuadratureGrid

    @property
    def n(self) -> int:
        return len(self.Xi)

    def central_index(self) -> int:
        """Index of the center of Ξ closest to the middle of Ω."""
        lo, hi = self.Omega.core_bounds()
        return int(np.argmin(np.linalg.norm(self.Xi.points - (lo + hi) / 2, axis=1)))


def collar_width(K: float, h: float) -> float:
    return K * h * abs(log(h))


def build_level(
    spec: KernelSpec,
    Omega: DomainRegion,
    n: int,
    seed: int,
    variant: Union[str, BasisVariant] = BasisVariant.FULL,
    K: Optional[float] = None,
    extend: bool = True,
    grid_nodes: Optional[int] = None,
    threads: Optional[int] = None,
) -> SweepLevel:
    """Generate Ξ, extend it by a collar of width K h |log h| and build the basis of Ξ.

    Args:
        spec: Kernel.
        Omega: Domain containing Ξ.
        n: Number of points of Ξ.
        seed: Run seed.
        variant: Basis variant.
        K: Footprint parameter, also sets the collar width.
        extend: Extend Ξ into the collar; otherwise X = Ξ.
        grid_nodes: Quadrature nodes per axis on Ω, derived from h when omitted.
        threads: Worker threads for local solves.
    """
    variant = BasisVariant(variant)
    K = localization_settings.default_K if K is None else float(K)
    Xi = generate_quasi_uniform(Omega, n, seed)
    h = fill_distance(Xi, Omega)
    q = separation_radius(Xi)
    X = extend_pointset(Xi, Omega, collar_width(K, h), h=h) if extend else Xi
    logger.info(f"Level n={n}: h={h:.4g}, q={q:.4g}, |X|={len(X)}, variant={variant.value}")
    functions = get_basis(variant, spec, X, range(len(Xi)), K=K, h=h, threads=threads)
    family = family_from_functions(functions, X.points)
    grid = QuadratureGrid.midpoint(Omega, grid_nodes) if grid_nodes else QuadratureGrid.for_resolution(Omega, h)
    return SweepLevel(spec, Omega, Xi, X, h, q, variant, K, functions, family, grid)


def pointwise_rate(spec: KernelSpec, Omega: DomainRegion, n: int, seed: int) -> DecayFit:
    """Pointwise decay fit of the central full Lagrange function on ``n`` points of Omega."""
    level = build_level(spec, Omega, n, seed, BasisVariant.FULL, K=localization_settings.default_K, extend=False)
    return fit_pointwise_decay(level.functions[level.central_index()], level.grid, level.h)


def calibrate_K(spec: KernelSpec, Omega: DomainRegion, n: int, seed: int, tau: float = 0.0) -> Tuple[float, DecayFit]:
    """Footprint parameter K = 4 (2m + tau + 1 - d) / nu_hat + margin from a calibration decay fit.

    Returns:
        The calibrated K and the fit it was derived from.
    """
    fit = pointwise_rate(spec, Omega, n, seed)
    K = suggest_K(spec, fit.nu_hat, tau)
    logger.info(f"Calibrated K={K:.4g} from nu_hat={fit.nu_hat:.4g} (R^2={fit.r_squared:.3f}, n={n})")
    return K, fit
