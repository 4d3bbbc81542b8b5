from enum import Enum
from typing import List, Optional, Sequence

from diagnostics.checks import bernstein_sweep, equicontinuity_probe, riesz_lower_check, synthesis_norm_check
from diagnostics.experiments import (
    decay_sweep,
    gram_report,
    kernel_norm_report,
    local_error_h_sweep,
    local_error_sweep,
    regularity_report,
    spectrum_report,
    tail_rate_sweep,
    truncation_sweep,
)
from diagnostics.fits import RateReport
from diagnostics.levels import SweepLevel, build_level, pointwise_rate
from diagnostics.norms import Sigma
from geometry.domain import DomainRegion
from interpolation.lagrange import BasisVariant
from kernels.polynomials import monomial_basis
from kernels.spec import KernelSpec
from utils.errors import InvalidInputError
from utils.log import logger


class CheckType(str, Enum):
    DECAY = "decay"
    TAIL = "tail"
    LOCAL = "local"
    GRAM = "gram"
    SPECTRUM = "spectrum"
    SYNTHESIS = "synthesis"
    RIESZ = "riesz"
    BERNSTEIN = "bernstein"
    EQUICONTINUITY = "equicontinuity"
    REGULARITY = "regularity"
    KERNEL_NORM = "kernel-norm"


def get_available_checks() -> List[str]:
    return [c.value for c in CheckType]


def run_check(
    check: str,
    spec: KernelSpec,
    Omega: DomainRegion,
    n_list: Sequence[int],
    K: float,
    K_list: Sequence[float],
    sigma_list: Sequence[Sigma],
    trials: int,
    seed: int,
    variant: BasisVariant = BasisVariant.FULL,
    threads: Optional[int] = None,
    levels: Optional[Sequence[SweepLevel]] = None,
) -> List[RateReport]:
    """Run one diagnostic check and return its reports.

    Checks over an h-sweep reuse ``levels`` when given; otherwise they are built from ``n_list``.
    Single-level checks (tail, local) run at the middle entry of ``n_list``.
    """
    try:
        check_type = CheckType(check)
    except ValueError as e:
        raise InvalidInputError(f"Check: {check} not found, choose from {get_available_checks()}") from e
    logger.info(f"Running {check_type.value} check for {spec.label}")

    n_mid = sorted(n_list)[len(n_list) // 2]

    def sweep_levels() -> Sequence[SweepLevel]:
        if levels is not None:
            return levels
        return [build_level(spec, Omega, n, seed, variant, K, threads=threads) for n in n_list]

    if check_type == CheckType.DECAY:
        return decay_sweep(spec, Omega, n_list, seed)
    if check_type == CheckType.TAIL:
        nu_hat = pointwise_rate(spec, Omega, n_mid, seed).nu_hat
        return truncation_sweep(spec, Omega, n_mid, K_list, seed) + [
            tail_rate_sweep(spec, Omega, n_list, K, nu_hat, seed)
        ]
    if check_type == CheckType.LOCAL:
        return [
            local_error_sweep(spec, Omega, n_mid, K_list, seed, threads=threads),
            local_error_h_sweep(spec, Omega, n_list, K, seed, threads=threads),
        ]
    if check_type == CheckType.GRAM:
        degree = max(spec.cpd_degree or 1, 1)
        radii = [0.1 * 10 ** (-k / 4) for k in range(5)]
        return [gram_report(monomial_basis(degree, spec.d), [0.3] * spec.d, radii, 0.2, seed)]
    if check_type == CheckType.SPECTRUM:
        return [spectrum_report(sweep_levels())]
    if check_type == CheckType.SYNTHESIS:
        return [synthesis_norm_check(sweep_levels(), sigma, trials, seed) for sigma in sigma_list]
    if check_type == CheckType.RIESZ:
        return [riesz_lower_check(sweep_levels(), 2.0, trials, seed)]
    if check_type == CheckType.BERNSTEIN:
        built = sweep_levels()
        return [
            bernstein_sweep(spec, Omega, n_list, sigma, K, trials, seed, variant, threads, levels=built)
            for sigma in sigma_list
        ]
    if check_type == CheckType.REGULARITY:
        return [regularity_report(Omega, seed)]
    if check_type == CheckType.KERNEL_NORM:
        orders = sorted({int(s) for s in sigma_list if s != "m"}) or [0]
        return [kernel_norm_report(spec, sigma) for sigma in orders]
    return [equicontinuity_probe(sweep_levels())]
