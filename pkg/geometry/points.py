from dataclasses import dataclass
from functools import cached_property
from math import ceil
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel
from scipy.spatial import cKDTree

from geometry.domain import DomainKind, DomainRegion, unit_ball_volume
from geometry.settings import geometry_settings
from utils.errors import InvalidInputError
from utils.log import logger
from utils.rng import stream


@dataclass(frozen=True, eq=False)
class PointSet:
    """An ordered set of distinct centers in R^d together with the domain they were drawn for.

    Indices are positions in ``points`` and never change; the spatial index is built lazily and
    only read afterwards, so queries may run concurrently.
    """

    points: np.ndarray
    domain: DomainRegion

    def __post_init__(self) -> None:
        pts = np.ascontiguousarray(np.atleast_2d(np.asarray(self.points, dtype=float)))
        if pts.size == 0:
            pts = pts.reshape(0, self.domain.dim)
        if pts.shape[1] != self.domain.dim:
            raise InvalidInputError(f"points have dimension {pts.shape[1]}, domain has {self.domain.dim}")
        if not np.all(np.isfinite(pts)):
            raise InvalidInputError("point coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if len(pts) >= 2:
            dist, _ = self.tree.query(pts, k=2)
            if np.min(dist[:, 1]) <= 0.0:
                raise InvalidInputError("point set contains duplicate points")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @cached_property
    def tree(self) -> cKDTree:
        return cKDTree(self.points)


class GeometryStats(BaseModel):
    """Fill distance h, separation radius q and mesh ratio rho = h / q."""

    h: float
    q: float
    rho: float


def separation_radius(X: PointSet) -> float:
    """Half the minimal pairwise distance, from nearest-neighbor queries."""
    if len(X) < 2:
        raise InvalidInputError("separation radius needs at least 2 points")
    dist, _ = X.tree.query(X.points, k=2)
    return 0.5 * float(np.min(dist[:, 1]))


def fill_distance(X: PointSet, D: Optional[DomainRegion] = None, probe_density: Optional[int] = None) -> float:
    """Largest distance from a probe point of ``D`` to its nearest center.

    The probe lattice has ``probe_density`` nodes per axis. The value is a lower estimate of
    sup_{x in D} dist(x, X) and converges to it as the density grows. A lattice with no node in
    ``D`` is refined by doubling, up to ``max_probe_density``.

    Raises:
        InvalidInputError: ``X`` is empty, or no probe lattice up to the maximal density meets ``D``.
    """
    if len(X) == 0:
        raise InvalidInputError("fill distance of an empty point set")
    D = D or X.domain
    density = probe_density or geometry_settings.probe_density
    probes = D.probe_grid(density)
    while len(probes) == 0 and density < geometry_settings.max_probe_density:
        density = min(2 * density, geometry_settings.max_probe_density)
        probes = D.probe_grid(density)
    if len(probes) == 0:
        raise InvalidInputError(f"no probe point of a {density}-per-axis lattice lies in the domain")
    dist, _ = X.tree.query(probes, k=1)
    return float(np.max(dist))


def geometry_stats(X: PointSet, D: Optional[DomainRegion] = None, probe_density: Optional[int] = None) -> GeometryStats:
    h = fill_distance(X, D, probe_density)
    q = separation_radius(X)
    return GeometryStats(h=h, q=q, rho=h / q)


def generate_quasi_uniform(D: DomainRegion, n: int, seed: int) -> PointSet:
    """Jittered-grid point set with ``n`` points in ``D``.

    Every point sits at the center of its own cell moved by at most ``jitter`` cell widths per
    axis, so distinct cells never produce coincident points.

    Boxes are split recursively: the first axis into slabs, each slab receiving ``n // k`` or
    ``n // k + 1`` points, which are then laid out over the remaining axes the same way. Cells
    therefore differ in width by at most one count per axis and no cell is left empty, which keeps
    rho <= 4 for every ``n``. Balls use a regular lattice clipped to the ball, with surplus cells
    dropped at seeded random positions.
    """
    if n < 1:
        raise InvalidInputError(f"n must be at least 1, got {n}")
    core = D.core()
    lo, hi = core.core_bounds()
    if n == 1:
        center = (lo + hi) / 2 if core.kind == DomainKind.BOX else np.asarray(core.center, dtype=float)
        return PointSet(center[None, :], core)

    rng = stream(seed, f"quasi-uniform:{n}")
    if core.kind == DomainKind.BOX:
        cells, width = _stratified_cells(lo, hi, n)
    else:
        k = max(1, ceil(n ** (1.0 / core.dim) - 1e-9))
        cells = _cell_centers(core, k)
        while len(cells) < n:
            k += 1
            cells = _cell_centers(core, k)
        keep = np.sort(rng.choice(len(cells), size=n, replace=False))
        cells = cells[keep]
        width = np.broadcast_to((hi - lo) / k, cells.shape)
    jitter = rng.uniform(-1.0, 1.0, size=cells.shape) * geometry_settings.jitter * width
    moved = cells + jitter
    # keep the unjittered cell center where the jitter would leave the domain
    outside = ~core.contains(moved)
    moved[outside] = cells[outside]
    logger.debug(f"Generated {n} jittered-grid points in a {core.kind.value}")
    return PointSet(moved, core)


def _stratified_cells(lo: np.ndarray, hi: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Centers and widths of ``n`` cells tiling the box ``[lo, hi]``."""
    extent = hi - lo
    if len(lo) == 1:
        width = extent[0] / n
        centers = lo[0] + (np.arange(n) + 0.5) * width
        return centers[:, None], np.full((n, 1), width)
    # slab count along the first axis matching the cell size of an isotropic lattice
    spacing = (float(np.prod(extent)) / n) ** (1.0 / len(lo))
    k = int(min(n, max(1, round(extent[0] / spacing))))
    bounds = (np.arange(k + 1) * n) // k
    slab = extent[0] / k
    centers, widths = [], []
    for i in range(k):
        count = int(bounds[i + 1] - bounds[i])
        sub_centers, sub_widths = _stratified_cells(lo[1:], hi[1:], count)
        centers.append(np.column_stack([np.full(count, lo[0] + (i + 0.5) * slab), sub_centers]))
        widths.append(np.column_stack([np.full(count, slab), sub_widths]))
    return np.vstack(centers), np.vstack(widths)


def _cell_centers(D: DomainRegion, k: int) -> np.ndarray:
    lo, hi = D.core_bounds()
    axes = [lo[i] + (np.arange(k) + 0.5) * (hi[i] - lo[i]) / k for i in range(D.dim)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, D.dim)
    return mesh[D.contains(mesh)]


def boundary_regularity_probe(Omega: DomainRegion, r_max: float, samples: Optional[int] = None, seed: int = 0) -> float:
    """Empirical α_Ω = min over probe centers x and radii r <= r_max of vol(B(x, r) ∩ Ω) / r^d.

    Probe centers are the extreme points of Ω (box corners or ball poles) plus seeded random
    interior points; radii are r_max / 2 and r_max. Volumes are Monte-Carlo estimates with
    ``samples`` uniform points per ball.
    """
    if r_max <= 0:
        raise InvalidInputError(f"r_max must be positive, got {r_max}")
    if r_max > Omega.r_omega + 1e-12:
        raise InvalidInputError(f"r_max={r_max} exceeds the inradius parameter {Omega.r_omega}")
    samples = samples or geometry_settings.regularity_samples
    rng = stream(seed, "boundary-regularity")
    d = Omega.dim
    lo, hi = Omega.bounds()
    interior = rng.uniform(lo, hi, size=(4 * geometry_settings.regularity_interior_probes, d))
    interior = interior[Omega.contains(interior)][: geometry_settings.regularity_interior_probes]
    centers = np.vstack([Omega.extreme_points(), interior])

    # uniform samples in the unit ball: gaussian direction, radius ~ U^(1/d)
    direction = rng.standard_normal((samples, d))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    unit_ball = direction * rng.uniform(0.0, 1.0, size=(samples, 1)) ** (1.0 / d)

    omega_d = unit_ball_volume(d)
    alpha = np.inf
    for x in centers:
        for r in (r_max / 2, r_max):
            fraction = float(np.mean(Omega.contains(x + r * unit_ball)))
            alpha = min(alpha, fraction * omega_d)
    return float(alpha)
