from typing import List, Optional, Sequence, Union

from geometry.footprint import footprint
from geometry.points import PointSet, fill_distance
from interpolation.lagrange import BasisVariant, LagrangeFunction, solve_full_basis
from interpolation.system import assemble
from kernels.polynomials import polynomial_basis
from kernels.spec import KernelSpec
from localization.local import LocalLagrange, build_local_basis
from localization.settings import localization_settings
from localization.truncation import truncate_lagrange
from utils.errors import InvalidInputError


def get_available_variants() -> List[str]:
    return [v.value for v in BasisVariant]


def get_basis(
    variant: Union[str, BasisVariant],
    spec: KernelSpec,
    X: PointSet,
    xi_indices: Optional[Sequence[int]] = None,
    K: Optional[float] = None,
    h: Optional[float] = None,
    threads: Optional[int] = None,
) -> List[LagrangeFunction]:
    """Build the full, truncated or local Lagrange functions of ``xi_indices`` on ``X``."""
    try:
        variant = BasisVariant(variant)
    except ValueError as e:
        raise InvalidInputError(f"Variant: {variant} not found, choose from {get_available_variants()}") from e
    indices = list(range(len(X))) if xi_indices is None else [int(i) for i in xi_indices]

    if variant == BasisVariant.LOCAL:
        local: List[LocalLagrange] = build_local_basis(spec, X, indices, K=K, h=h, threads=threads)
        return list(local)

    full = solve_full_basis(assemble(spec, X), indices)
    if variant == BasisVariant.FULL:
        return full

    K = localization_settings.default_K if K is None else float(K)
    h = fill_distance(X) if h is None else float(h)
    basis = polynomial_basis(spec)
    return [truncate_lagrange(chi, footprint(X, chi.center, K, h), basis).function for chi in full]
