from typing import List, Optional, Sequence, Union

import numpy as np
from scipy.spatial import cKDTree

from diagnostics.fits import RateReport, rate_report
from diagnostics.levels import SweepLevel, build_level
from diagnostics.norms import Sigma, norm_gram
from diagnostics.quadrature import QuadratureGrid
from diagnostics.settings import diagnostics_settings
from geometry.domain import DomainRegion
from interpolation.expansion import ExpansionFamily
from interpolation.lagrange import BasisVariant
from kernels.spec import KernelSpec
from utils.errors import InvalidInputError
from utils.log import logger
from utils.rng import stream


def trial_vectors(size: int, trials: int, seed: int, label: str, p: float = 2.0) -> np.ndarray:
    """Random unit-ℓ_p rows followed by the coordinate vectors e_1 .. e_size."""
    rng = stream(seed, f"{label}:{size}")
    a = rng.standard_normal((trials, size))
    if np.isinf(p):
        a /= np.max(np.abs(a), axis=1, keepdims=True)
    else:
        a /= np.sum(np.abs(a) ** p, axis=1, keepdims=True) ** (1.0 / p)
    return np.vstack([a, np.eye(size)])


def _quadratic_forms(G: np.ndarray, a: np.ndarray) -> np.ndarray:
    return np.maximum(np.einsum("ij,jk,ik->i", a, G, a), 0.0)


def _sigma_target(sigma: Sigma, spec: KernelSpec) -> float:
    return float(spec.m) if sigma == "m" else float(sigma)


def synthesis_ratio(
    family: ExpansionFamily, sigma: Sigma, grid: QuadratureGrid, trials: Optional[int] = None, seed: int = 0
) -> float:
    """max over unit a of ‖Σ a_j v_j‖_{W_2^sigma} / ‖a‖_2, sampled over random a and every e_j."""
    trials = diagnostics_settings.trials if trials is None else trials
    G = norm_gram(family, sigma, grid)
    a = trial_vectors(family.size, trials, seed, f"synthesis:{sigma}")
    return float(np.sqrt(np.max(_quadratic_forms(G, a))))


def synthesis_norm_check(
    levels: Sequence[SweepLevel],
    sigma: Sigma,
    trials: Optional[int] = None,
    seed: int = 0,
    tolerance: float = 0.35,
) -> RateReport:
    """h-exponent of the synthesis ratio against d/2 - sigma (sigma='m' uses the energy norm)."""
    spec = levels[0].spec
    hs = [lv.h for lv in levels]
    ratios = [synthesis_ratio(lv.family, sigma, lv.grid, trials, seed) for lv in levels]
    target = spec.d / 2 - _sigma_target(sigma, spec)
    return rate_report(
        f"synthesis-sigma-{sigma}",
        "h",
        hs,
        ratios,
        target=target,
        tolerance=tolerance,
        details={"variant": levels[0].variant.value, "n": [lv.n for lv in levels]},
    )


def riesz_lower_constant(level: SweepLevel, p: float = 2.0, trials: Optional[int] = None, seed: int = 0) -> float:
    """min over unit-ℓ_p a of q^{-d/p} ‖Σ a_j v_j‖_{L_p(Ω)}."""
    trials = diagnostics_settings.trials if trials is None else trials
    a = trial_vectors(level.family.size, trials, seed, f"riesz:{p}", p=p)
    grid = level.grid
    values = np.abs(np.asarray(level.family(grid.nodes)) @ a.T)
    if np.isinf(p):
        norms = np.max(values, axis=0)
        scale = 1.0
    else:
        norms = np.sum(grid.weights[:, None] * values**p, axis=0) ** (1.0 / p)
        scale = level.q ** (-level.spec.d / p)
    return float(scale * np.min(norms))


def riesz_lower_check(
    levels: Sequence[SweepLevel],
    p: float = 2.0,
    trials: Optional[int] = None,
    seed: int = 0,
    fraction: Optional[float] = None,
) -> RateReport:
    """Lower Riesz constant across an h-sweep.

    Passes when every value is positive, stays above ``fraction`` of the value at the coarsest h
    and max / min stays below the configured drift. Local bases lose up to half of the constant,
    so for them the fraction is halved and the drift bound doubled.
    """
    fraction = diagnostics_settings.riesz_fraction if fraction is None else fraction
    drift_bound = diagnostics_settings.riesz_drift
    if any(lv.variant == BasisVariant.LOCAL for lv in levels):
        fraction, drift_bound = fraction / 2, drift_bound * 2
    c_hat = [riesz_lower_constant(lv, p, trials, seed) for lv in levels]
    coarsest = int(np.argmax([lv.h for lv in levels]))
    positive = all(c > 0 for c in c_hat)
    drift = max(c_hat) / min(c_hat) if positive else float("inf")
    passed = positive and all(c >= fraction * c_hat[coarsest] for c in c_hat) and drift < drift_bound
    if not positive:
        logger.warning(f"Riesz check found a vanishing combination: {c_hat}")
        c_hat = [max(c, diagnostics_settings.fit_floor) for c in c_hat]
    return rate_report(
        f"riesz-lower-p-{p:g}",
        "h",
        [lv.h for lv in levels],
        c_hat,
        passed=passed,
        details={
            "variant": levels[0].variant.value,
            "c_hat": c_hat,
            "drift": drift,
            "drift_bound": drift_bound,
            "fraction": fraction,
            "baseline_h": levels[coarsest].h,
        },
    )


def bernstein_ratio(level: SweepLevel, sigma: Sigma, trials: Optional[int] = None, seed: int = 0) -> float:
    """max over sampled a of ‖s‖_{W_2^sigma(Ω)} / ‖s‖_{L_2(Ω)} with s = Σ a_j v_j."""
    trials = diagnostics_settings.trials if trials is None else trials
    G0 = norm_gram(level.family, 0, level.grid)
    Gs = G0 if sigma == 0 else norm_gram(level.family, sigma, level.grid)
    a = trial_vectors(level.family.size, trials, seed, f"bernstein:{sigma}")
    weak = _quadratic_forms(G0, a)
    strong = _quadratic_forms(Gs, a)
    usable = weak > 0
    return float(np.sqrt(np.max(strong[usable] / weak[usable])))


def bernstein_sweep(
    spec: KernelSpec,
    Omega: DomainRegion,
    n_list: Sequence[int],
    sigma: Sigma,
    K: Optional[float] = None,
    trials: Optional[int] = None,
    seed: int = 0,
    variant: Union[str, BasisVariant] = BasisVariant.FULL,
    threads: Optional[int] = None,
    levels: Optional[Sequence[SweepLevel]] = None,
    tolerance: Optional[float] = None,
) -> RateReport:
    """Slope of log R(h) against log h for the Bernstein ratio, compared with -sigma.

    Prebuilt ``levels`` are reused; otherwise one level per entry of ``n_list`` is built.
    """
    if levels is None:
        if len(n_list) < 3:
            raise InvalidInputError("bernstein_sweep needs at least 3 values of n")
        levels = [build_level(spec, Omega, n, seed, variant, K, threads=threads) for n in n_list]
    target = -_sigma_target(sigma, spec)
    if tolerance is None:
        tolerance = 0.4 if sigma == "m" else 0.3
    ratios = [bernstein_ratio(lv, sigma, trials, seed) for lv in levels]
    return rate_report(
        f"bernstein-sigma-{sigma}",
        "h",
        [lv.h for lv in levels],
        ratios,
        target=target,
        tolerance=tolerance,
        details={"variant": levels[0].variant.value, "n": [lv.n for lv in levels]},
    )


def equicontinuity_quotient(level: SweepLevel, j: int, eps: float) -> float:
    """max over grid-neighbour pairs of |v_j(x) - v_j(y)| / (dist(x, y) / q)^eps."""
    grid = level.grid
    pairs = cKDTree(grid.nodes).query_pairs(grid.spacing * 1.01, output_type="ndarray")
    if len(pairs) == 0:
        raise InvalidInputError("quadrature grid has no neighbouring nodes")
    values = np.asarray(level.family.column(j)(grid.nodes))
    x, y = grid.nodes[pairs[:, 0]], grid.nodes[pairs[:, 1]]
    dist = np.linalg.norm(x - y, axis=1)
    quotient = np.abs(values[pairs[:, 0]] - values[pairs[:, 1]]) / (dist / level.q) ** eps
    return float(np.max(quotient))


def equicontinuity_probe(levels: Sequence[SweepLevel], eps: Optional[float] = None) -> RateReport:
    """Hölder quotient of the central basis function across an h-sweep; passes while its spread stays bounded."""
    spec = levels[0].spec
    eps = min(1.0, spec.m - spec.d / 2 - 0.01) if eps is None else eps
    quotients = [equicontinuity_quotient(lv, lv.central_index(), eps) for lv in levels]
    drift = max(quotients) / min(quotients)
    return rate_report(
        "equicontinuity",
        "h",
        [lv.h for lv in levels],
        quotients,
        passed=drift <= diagnostics_settings.equicontinuity_drift,
        details={"eps": eps, "drift": drift},
    )


def level_summary(levels: Sequence[SweepLevel]) -> List[dict]:
    return [{"n": lv.n, "h": lv.h, "q": lv.q, "X": len(lv.X), "variant": lv.variant.value} for lv in levels]
