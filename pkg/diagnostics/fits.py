from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field
from scipy import stats
from scipy.spatial.distance import cdist

from diagnostics.quadrature import QuadratureGrid
from diagnostics.settings import diagnostics_settings
from interpolation.expansion import Expansion
from interpolation.lagrange import CoefficientMatrix, LagrangeFunction
from kernels.radial import kernel_matrix
from kernels.spec import KernelSpec
from utils.errors import InsufficientDataError, InvalidInputError


class DecayRegime(str, Enum):
    POINTWISE = "pointwise"
    ENERGY = "energy-annulus"
    COEFFICIENT = "coefficient"


class DecayFit(BaseModel):
    """Fit of y ≈ C exp(-nu t), t a distance measured in units of h."""

    regime: DecayRegime
    nu_hat: float
    C_hat: float
    r_squared: float
    n_samples: int


class LineFit(BaseModel):
    slope: float
    intercept: float
    r_squared: float


def line_fit(x: np.ndarray, y: np.ndarray) -> LineFit:
    """Ordinary least squares y = slope x + intercept; R^2 is 1 for a constant y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2 or np.ptp(x) == 0:
        raise InsufficientDataError(f"a line fit needs at least 2 distinct abscissae, got {len(np.unique(x))}")
    fit = stats.linregress(x, y)
    residual = y - (fit.slope * x + fit.intercept)
    ss_res = float(np.sum(residual**2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r_squared = 1.0 if ss_tot == 0 else min(max(1.0 - ss_res / ss_tot, 0.0), 1.0)
    return LineFit(slope=float(fit.slope), intercept=float(fit.intercept), r_squared=r_squared)


def upper_envelope(t: np.ndarray, y: np.ndarray, width: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """Largest sample per bin of ``width`` in ``t``."""
    bins = np.floor(t / width).astype(int)
    frame = pd.DataFrame({"bin": bins, "t": t, "y": y})
    top = frame.loc[frame.groupby("bin")["y"].idxmax()].sort_values("t")
    return top["t"].to_numpy(), top["y"].to_numpy()


def fit_exponential_decay(
    t: np.ndarray,
    y: np.ndarray,
    regime: DecayRegime,
    min_samples: int,
    envelope: bool = True,
    floor: Optional[float] = None,
) -> DecayFit:
    """Fit log y = log C - nu t over samples above ``floor`` (default: the configured fit floor).

    With ``envelope`` the samples are first reduced to the largest value per unit bin of t, so
    oscillation of the decaying function between its zeros does not bias the rate.
    """
    t = np.asarray(t, dtype=float).ravel()
    y = np.abs(np.asarray(y, dtype=float).ravel())
    usable = y > (diagnostics_settings.fit_floor if floor is None else floor)
    if int(np.sum(usable)) < min_samples:
        raise InsufficientDataError(f"{regime.value} fit has {int(np.sum(usable))} usable samples, needs {min_samples}")
    t, y = t[usable], y[usable]
    if envelope:
        t, y = upper_envelope(t, y)
        if len(t) < diagnostics_settings.min_fit_bins:
            needed = diagnostics_settings.min_fit_bins
            raise InsufficientDataError(f"{regime.value} fit spans {len(t)} distance bins, needs {needed}")
    fit = line_fit(t, np.log(y))
    return DecayFit(
        regime=regime,
        nu_hat=-fit.slope,
        C_hat=float(np.exp(fit.intercept)),
        r_squared=fit.r_squared,
        n_samples=len(t),
    )


def fit_pointwise_decay(
    chi: LagrangeFunction, grid: QuadratureGrid, h: float, center: Optional[np.ndarray] = None
) -> DecayFit:
    """Decay of |chi(x)| against dist(x, xi) / h over the grid nodes."""
    if h <= 0:
        raise InvalidInputError(f"h must be positive, got {h}")
    center = chi.center_point if center is None else np.asarray(center, dtype=float)
    t = np.linalg.norm(grid.nodes - center, axis=1) / h
    values = np.asarray(chi(grid.nodes))
    return fit_exponential_decay(t, values, DecayRegime.POINTWISE, diagnostics_settings.min_pointwise_samples)


def tail_energy(spec: KernelSpec, chi: Expansion, xi: np.ndarray, R: float) -> float:
    """sqrt|a_out^T K a_out| for the coefficients of centers farther than R from xi."""
    outside = np.linalg.norm(chi.centers - xi, axis=1) > R
    if not np.any(outside):
        return 0.0
    a = chi.kernel_coeffs[outside]
    return float(np.sqrt(abs(a @ kernel_matrix(spec, chi.centers[outside]) @ a)))


def fit_energy_decay(
    spec: KernelSpec, chi: Expansion, xi: np.ndarray, radii: Sequence[float], h: float
) -> DecayFit:
    """Decay of the tail-energy surrogate against R / h.

    The surrogate only sees the kernel coefficients outside B(xi, R); it tracks the W_2^m tail
    norm in rate, not in value.
    """
    radii = np.asarray(radii, dtype=float)
    if len(radii) < diagnostics_settings.min_fit_bins:
        raise InsufficientDataError(f"energy decay fit needs at least {diagnostics_settings.min_fit_bins} radii")
    if np.any(np.diff(radii) <= 0):
        raise InvalidInputError("radii must be increasing")
    xi = np.asarray(xi, dtype=float)
    tails = np.array([tail_energy(spec, chi, xi, R) for R in radii])
    return fit_exponential_decay(
        radii / h, tails, DecayRegime.ENERGY, diagnostics_settings.min_fit_bins, envelope=False
    )


def fit_coefficient_decay(A: CoefficientMatrix, X: np.ndarray, h: float, q: float, m: int, d: int) -> DecayFit:
    """Decay of |A_{xi zeta}| q^{2m-d} against dist(xi, zeta) / h, pooled over off-diagonal pairs."""
    X = np.asarray(X, dtype=float)
    n = len(X)
    if n < diagnostics_settings.min_coefficient_points:
        needed = diagnostics_settings.min_coefficient_points
        raise InsufficientDataError(f"coefficient decay fit needs {needed} points, got {n}")
    off = ~np.eye(n, dtype=bool)
    t = cdist(X, X)[off] / h
    raw = np.abs(A.A[off])
    # the floor applies to the coefficients themselves, not to their scaled values
    keep = raw > diagnostics_settings.fit_floor
    y = raw[keep] * q ** (2 * m - d)
    return fit_exponential_decay(t[keep], y, DecayRegime.COEFFICIENT, diagnostics_settings.min_fit_bins, floor=0.0)


class RateReport(BaseModel):
    """A sweep of (variable, value) samples with its fitted slope and acceptance decision.

    ``scale`` is ``loglog`` (slope of log value against log variable) or ``semilog`` (slope of
    log value against the variable).
    """

    model_config = ConfigDict(populate_by_name=True)

    name: str
    sweep_variable: str
    sweep: List[Tuple[float, float]]
    scale: str = "loglog"
    slope: float
    intercept: float
    r_squared: float
    target: Optional[float] = None
    tolerance: Optional[float] = None
    passed: bool = Field(alias="pass")
    details: Dict[str, Any] = Field(default_factory=dict)


def rate_report(
    name: str,
    sweep_variable: str,
    xs: Sequence[float],
    ys: Sequence[float],
    scale: str = "loglog",
    target: Optional[float] = None,
    tolerance: Optional[float] = None,
    passed: Optional[bool] = None,
    details: Optional[Dict[str, Any]] = None,
) -> RateReport:
    """Fit the sweep and build the report.

    Without an explicit ``passed`` the report passes iff |slope - target| <= tolerance.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if len(xs) < 3:
        raise InsufficientDataError(f"{name}: a rate fit needs at least 3 sweep points, got {len(xs)}")
    if np.any(ys <= 0):
        raise InsufficientDataError(f"{name}: sweep values must be positive for a log fit")
    x_fit = np.log(xs) if scale == "loglog" else xs
    fit = line_fit(x_fit, np.log(ys))
    if passed is None:
        passed = target is not None and tolerance is not None and abs(fit.slope - target) <= tolerance
    return RateReport(
        name=name,
        sweep_variable=sweep_variable,
        sweep=[(float(x), float(y)) for x, y in zip(xs, ys)],
        scale=scale,
        slope=fit.slope,
        intercept=fit.intercept,
        r_squared=fit.r_squared,
        target=target,
        tolerance=tolerance,
        passed=bool(passed),
        details=details or {},
    )


def report_to_frame(report: RateReport) -> pd.DataFrame:
    return pd.DataFrame(report.sweep, columns=[report.sweep_variable, "value"])
