from typing import List, Optional, Sequence, Tuple

import numpy as np

from diagnostics.fits import (
    DecayFit,
    RateReport,
    fit_coefficient_decay,
    fit_energy_decay,
    fit_pointwise_decay,
    rate_report,
)
from diagnostics.levels import SweepLevel, build_level
from diagnostics.settings import diagnostics_settings
from geometry.domain import DomainRegion, unit_ball_volume
from geometry.footprint import footprint
from geometry.points import boundary_regularity_probe
from interpolation.lagrange import BasisVariant, full_coefficient_matrix
from interpolation.system import assemble
from kernels.norms import kernel_sobolev_norm_estimate
from kernels.polynomials import PolynomialBasis, polynomial_basis
from kernels.spec import KernelSpec
from localization.gram import gram_bound_sweep
from localization.local import build_local_basis
from localization.spectrum import footprint_spectrum
from localization.truncation import truncate_lagrange, truncation_error
from utils.errors import InsufficientDataError, InvalidInputError
from utils.log import logger
from utils.rng import stream


def _full_levels(spec: KernelSpec, Omega: DomainRegion, n_list: Sequence[int], seed: int) -> List[SweepLevel]:
    return [build_level(spec, Omega, n, seed, BasisVariant.FULL, extend=False) for n in n_list]


def _monotone(values: Sequence[float]) -> bool:
    floor = diagnostics_settings.monotone_floor
    return all(b <= a + floor for a, b in zip(values, values[1:]))


def level_decay_fits(level: SweepLevel, j: Optional[int] = None) -> Tuple[DecayFit, DecayFit, DecayFit]:
    """Pointwise, energy and coefficient decay fits of the basis function ``j`` (default: central)."""
    spec = level.spec
    j = level.central_index() if j is None else j
    chi = level.functions[j]
    pointwise = fit_pointwise_decay(chi, level.grid, level.h)
    xi = level.X.points[j]
    reach = float(np.max(np.linalg.norm(level.X.points - xi, axis=1)))
    radii = level.h * np.arange(1, max(int(reach / level.h), 1) + 1)
    energy = fit_energy_decay(spec, chi, xi, radii[radii < reach], level.h)
    A = full_coefficient_matrix(assemble(spec, level.X))
    coefficient = fit_coefficient_decay(A, level.X.points, level.h, level.q, spec.m, spec.d)
    return pointwise, energy, coefficient


def decay_sweep(spec: KernelSpec, Omega: DomainRegion, n_list: Sequence[int], seed: int = 0) -> List[RateReport]:
    """Decay rates of the full basis across an h-sweep.

    The pointwise report passes when every fit has nu_hat > 0, R^2 >= 0.9 and the rates stay
    within the configured relative drift.
    """
    levels = _full_levels(spec, Omega, n_list, seed)
    fits = [level_decay_fits(lv) for lv in levels]
    hs = [lv.h for lv in levels]
    reports = []
    for k, name in enumerate(("pointwise", "energy", "coefficient")):
        nus = [f[k].nu_hat for f in fits]
        r2 = [f[k].r_squared for f in fits]
        positive = all(nu > 0 for nu in nus)
        drift = (max(nus) - min(nus)) / max(nus) if positive else float("inf")
        threshold = 0.9 if name == "pointwise" else 0.85
        passed = positive and min(r2) >= threshold
        if name == "pointwise":
            passed = passed and drift <= diagnostics_settings.stationarity_drift
        reports.append(
            rate_report(
                f"{name}-decay",
                "h",
                hs,
                [max(nu, diagnostics_settings.fit_floor) for nu in nus],
                passed=passed,
                details={"nu_hat": nus, "C_hat": [f[k].C_hat for f in fits], "r_squared": r2, "drift": drift},
            )
        )
    mu = [f[1].nu_hat for f in fits]
    nu = [f[2].nu_hat for f in fits]
    reports[1].details["coefficient_ratio"] = [c / e if e else None for e, c in zip(mu, nu)]
    return reports


def truncation_sweep(
    spec: KernelSpec,
    Omega: DomainRegion,
    n: int,
    K_list: Sequence[float],
    seed: int = 0,
    centers: int = 1,
) -> List[RateReport]:
    """tail_l1 and max |chi - chi_truncated| against K at a fixed level.

    Both reports pass when the values decrease monotonically in K and log-value against K has a
    negative slope with R^2 >= 0.9.
    """
    level = _full_levels(spec, Omega, [n], seed)[0]
    basis: PolynomialBasis = polynomial_basis(spec)
    chosen = _chosen_centers(level, centers, seed, "truncation")
    tails, errors = [], []
    for K in K_list:
        tail, error = 0.0, 0.0
        for j in chosen:
            chi = level.functions[j]
            result = truncate_lagrange(chi, footprint(level.X, j, K, level.h), basis)
            tail = max(tail, result.tail_l1)
            error = max(error, truncation_error(chi, result, level.grid.nodes))
        tails.append(tail)
        errors.append(error)
        logger.info(f"K={K:g}: tail_l1={tail:.3e}, truncation error={error:.3e}")
    reports = []
    for name, values in (("tail-l1", tails), ("truncation-error", errors)):
        clipped = [max(v, diagnostics_settings.fit_floor) for v in values]
        report = rate_report(name, "K", K_list, clipped, scale="semilog", passed=False, details={"h": level.h})
        report.passed = _monotone(values) and report.slope < 0 and report.r_squared >= 0.9
        reports.append(report)
    return reports


def tail_rate_sweep(
    spec: KernelSpec,
    Omega: DomainRegion,
    n_list: Sequence[int],
    K: float,
    nu_hat: float,
    seed: int = 0,
) -> RateReport:
    """log-log slope of tail_l1 in h against K nu_hat / 2 + d - 2m (tolerance 0.5)."""
    levels = _full_levels(spec, Omega, n_list, seed)
    basis = polynomial_basis(spec)
    tails = []
    for lv in levels:
        j = lv.central_index()
        tails.append(truncate_lagrange(lv.functions[j], footprint(lv.X, j, K, lv.h), basis).tail_l1)
    clipped = [max(t, diagnostics_settings.fit_floor) for t in tails]
    return rate_report(
        "tail-rate",
        "h",
        [lv.h for lv in levels],
        clipped,
        target=K * nu_hat / 2 + spec.d - 2 * spec.m,
        tolerance=0.5,
        details={"K": K, "nu_hat": nu_hat},
    )


def _chosen_centers(level: SweepLevel, count: Optional[int], seed: int, label: str) -> List[int]:
    if count is None or count >= level.n:
        return list(range(level.n))
    rest = np.setdiff1d(np.arange(level.n), [level.central_index()])
    picked = stream(seed, f"{label}:{level.n}").choice(rest, size=count - 1, replace=False)
    return [level.central_index()] + sorted(int(i) for i in picked)


def local_error(level: SweepLevel, K: float, centers: List[int], threads: Optional[int] = None) -> float:
    """max over ``centers`` of ‖b_xi - chi_xi‖ over the grid of Ω."""
    local = build_local_basis(level.spec, level.X, centers, K=K, h=level.h, threads=threads)
    nodes = level.grid.nodes
    return max(
        float(np.max(np.abs(np.asarray(level.functions[j](nodes)) - np.asarray(b(nodes)))))
        for j, b in zip(centers, local)
    )


def local_error_sweep(
    spec: KernelSpec,
    Omega: DomainRegion,
    n: int,
    K_list: Sequence[float],
    seed: int = 0,
    centers: Optional[int] = None,
    threads: Optional[int] = None,
) -> RateReport:
    """E(K) = max_xi ‖b_xi - chi_xi‖_∞ against K; passes for a negative semilog slope with R^2 >= 0.9.

    The maximum runs over every center of the level unless ``centers`` asks for a seeded sample
    of that many (the central one always included).
    """
    if len(K_list) < 3:
        raise InvalidInputError("local_error_sweep needs at least 3 values of K")
    level = _full_levels(spec, Omega, [n], seed)[0]
    chosen = _chosen_centers(level, centers, seed, "local-error")
    errors = [local_error(level, K, chosen, threads) for K in K_list]
    clipped = [max(e, diagnostics_settings.fit_floor) for e in errors]
    details = {"h": level.h, "centers": len(chosen)}
    report = rate_report("local-error-K", "K", K_list, clipped, scale="semilog", passed=False, details=details)
    report.passed = report.slope < 0 and report.r_squared >= 0.9
    return report


def local_error_h_sweep(
    spec: KernelSpec,
    Omega: DomainRegion,
    n_list: Sequence[int],
    K: float,
    seed: int = 0,
    centers: Optional[int] = None,
    threads: Optional[int] = None,
) -> RateReport:
    """E at fixed K across an h-sweep; passes when E decreases as h decreases."""
    levels = _full_levels(spec, Omega, n_list, seed)
    errors = [local_error(lv, K, _chosen_centers(lv, centers, seed, "local-error"), threads) for lv in levels]
    order = np.argsort([-lv.h for lv in levels])
    ordered = [errors[i] for i in order]
    clipped = [max(e, diagnostics_settings.fit_floor) for e in errors]
    return rate_report(
        "local-error-h",
        "h",
        [lv.h for lv in levels],
        clipped,
        passed=_monotone(ordered),
        details={"K": K},
    )


def gram_report(
    basis: PolynomialBasis,
    x: Sequence[float],
    radii: Sequence[float],
    h0: float,
    seed: int = 0,
    tolerance: float = 0.5,
) -> RateReport:
    """Gram sweep as a rate report: slope of log ‖G^{-1}‖ against log(1/r), target 2 * degree."""
    reports = gram_bound_sweep(basis, x, radii, h0, seed)
    if reports[0].two_tau_hat is None:
        raise InsufficientDataError("gram sweep produced no fit")
    inverse_radii = [1.0 / r.radius for r in reports]
    return rate_report(
        "gram-inverse",
        "1/r",
        inverse_radii,
        [r.inv_norm for r in reports],
        target=2.0 * basis.degree,
        tolerance=tolerance,
        details={"n_points": [r.n_points for r in reports], "h0": h0},
    )


def spectrum_report(levels: Sequence[SweepLevel]) -> RateReport:
    """theta of the central footprint system at each level, against h.

    Passes when every theta is positive and the local coefficient block satisfies
    ‖A_Υ‖_{1->1} <= #Υ max |A_Υ|.
    """
    spectra = []
    for lv in levels:
        ups = footprint(lv.X, lv.central_index(), lv.K, lv.h)
        spectra.append(footprint_spectrum(lv.spec, lv.X, ups))
    thetas = [s.theta for s in spectra]
    if not all(np.isfinite(thetas)):
        raise InsufficientDataError("a footprint has no more points than the polynomial space; increase K")
    bounded = all(s.coefficient_l1_norm <= s.coefficient_l1_bound * (1 + 1e-12) for s in spectra)
    return rate_report(
        "footprint-theta",
        "h",
        [lv.h for lv in levels],
        [max(t, diagnostics_settings.fit_floor) for t in thetas],
        passed=all(t > 0 for t in thetas) and bounded,
        details={"K": [lv.K for lv in levels], "spectra": [s.model_dump() for s in spectra]},
    )


def regularity_report(Omega: DomainRegion, seed: int = 0, samples: Optional[int] = None) -> RateReport:
    """Boundary regularity constant alpha_hat over r_max in r_Ω * {1/8, 1/4, 1/2, 1}.

    alpha_hat should not depend on the radius: the report passes for a log-log slope within 0.25 of 0.
    """
    radii = [Omega.r_omega * f for f in (0.125, 0.25, 0.5, 1.0)]
    alphas = [boundary_regularity_probe(Omega, r, samples, seed) for r in radii]
    logger.info(f"alpha_hat={min(alphas):.4g} (unit ball volume {unit_ball_volume(Omega.dim):.4g})")
    return rate_report(
        "boundary-regularity",
        "r",
        radii,
        alphas,
        target=0.0,
        tolerance=0.25,
        details={"alpha_hat": min(alphas), "unit_ball_volume": unit_ball_volume(Omega.dim)},
    )


def kernel_norm_report(
    spec: KernelSpec, sigma: int, radii: Sequence[float] = (0.25, 0.5, 1.0, 2.0), grid: int = 64
) -> RateReport:
    """Discrete W_2^sigma(B(0, R)) norms of k(., 0) against R; passes when every norm is finite and positive."""
    norms = [kernel_sobolev_norm_estimate(spec, sigma, 2.0, R, grid) for R in radii]
    finite = all(np.isfinite(norms)) and all(v > 0 for v in norms)
    return rate_report(
        f"kernel-norm-sigma-{sigma}",
        "R",
        radii,
        [v if np.isfinite(v) and v > 0 else diagnostics_settings.fit_floor for v in norms],
        passed=finite,
        details={"p": 2.0, "grid": grid},
    )
