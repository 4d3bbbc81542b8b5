from math import ceil
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel
from scipy import linalg, stats

from geometry.domain import DomainRegion, unit_ball_volume
from geometry.points import generate_quasi_uniform
from kernels.polynomials import PolynomialBasis, vandermonde
from utils.errors import InvalidInputError
from utils.log import logger


class GramReport(BaseModel):
    """Gram matrix G = Phi^T Phi of the points in one ball B(x, r)."""

    radius: float
    n_points: int
    G: List[List[float]]
    inv_norm: float
    # slope of log ‖G^{-1}‖ against log(1/r) over the whole sweep, i.e. 2 tau
    two_tau_hat: Optional[float] = None


def ball_points(x: Sequence[float], r: float, h0: float, seed: int, n: Optional[int] = None) -> np.ndarray:
    """Jittered-grid points in B(x, r) with fill distance about h0 * r.

    The count only depends on ``h0`` and the dimension, and the layout is seeded identically for
    every radius, so the sets for different radii are scaled copies of each other.
    """
    d = len(x)
    if n is None:
        n = ceil(unit_ball_volume(d) * (1.0 / h0 + 1) ** d)
    return generate_quasi_uniform(DomainRegion.ball(list(x), r), n, seed).points


def gram_inverse_norm(G: np.ndarray) -> float:
    """‖G^{-1}‖_2 from the smallest eigenvalue of the symmetric matrix G."""
    lam = linalg.eigvalsh(G)[0]
    return float(np.inf) if lam <= 0 else float(1.0 / lam)


def gram_bound_sweep(
    basis: PolynomialBasis,
    x: Sequence[float],
    radii: Sequence[float],
    h0: float,
    seed: int,
    n: Optional[int] = None,
) -> List[GramReport]:
    """‖G^{-1}‖ over a decreasing sequence of radii around ``x``.

    Args:
        basis: Polynomial space whose Vandermonde defines G.
        x: Ball center.
        radii: Strictly decreasing radii.
        h0: Relative fill distance of the points in each ball.
        seed: Seed of the point layout.
        n: Points per ball, defaults to ceil(ω_d (1/h0 + 1)^d).

    Returns:
        One report per radius; with two or more radii each carries the fitted 2 tau.
    """
    radii = [float(r) for r in radii]
    if not radii or any(r <= 0 for r in radii):
        raise InvalidInputError("radii must be positive")
    if any(b >= a for a, b in zip(radii, radii[1:])):
        raise InvalidInputError("radii must be strictly decreasing")
    if basis.N == 0:
        raise InvalidInputError("the Gram sweep needs a non-trivial polynomial space")
    if not 0 < h0 < 1:
        raise InvalidInputError(f"h0 must lie in (0, 1), got {h0}")

    reports = []
    for r in radii:
        pts = ball_points(x, r, h0, seed, n)
        Phi = vandermonde(basis, pts)
        G = Phi.T @ Phi
        reports.append(GramReport(radius=r, n_points=len(pts), G=G.tolist(), inv_norm=gram_inverse_norm(G)))

    if len(reports) >= 2 and all(np.isfinite(rep.inv_norm) for rep in reports):
        fit = stats.linregress(np.log(1.0 / np.array(radii)), np.log([rep.inv_norm for rep in reports]))
        slope = float(fit.slope)
        reports = [rep.model_copy(update={"two_tau_hat": slope}) for rep in reports]
        logger.info(f"Gram sweep over {len(radii)} radii: 2*tau_hat = {slope:.3f}")
    return reports
