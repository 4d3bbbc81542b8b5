from math import floor
from typing import Dict, List, Optional, Tuple

import numpy as np

from geometry.domain import DomainRegion
from geometry.points import PointSet, fill_distance
from geometry.settings import geometry_settings
from utils.errors import InvalidInputError
from utils.log import logger

Cell = Tuple[int, ...]


def extend_pointset(
    Xi: PointSet,
    Omega: DomainRegion,
    collar_width: float,
    h: Optional[float] = None,
    probe_density: Optional[int] = None,
) -> PointSet:
    """Extend ``Xi`` into the collar ``{x not in Omega : dist(x, Omega) <= collar_width}``.

    The added points form a greedy maximal h-net of ``Z = collar minus the union of B(xi, h)``:
    candidates are the probe lattice of ``Omega ∪ collar`` lying in ``Z``, visited in lattice
    order, and a candidate is accepted iff it is at distance >= h from every accepted one.
    Consequently ``q(result) >= min(q(Xi), h / 2)``, the result meets Omega exactly in ``Xi``,
    and every lattice probe of ``Omega ∪ collar`` lies within h of the result.

    Args:
        Xi: Centers inside Omega. They keep their indices, added points follow.
        Omega: The undilated domain.
        collar_width: Width of the collar, typically K h |log h|.
        h: Net spacing. Defaults to the measured fill distance of ``Xi``; it is raised if
            needed so that it covers the lattice probes of Omega.
        probe_density: Lattice nodes per axis over the bounding box of ``Omega ∪ collar``.

    Returns:
        PointSet on the dilated domain ``Omega.dilated(collar_width)``.
    """
    if collar_width <= 0:
        raise InvalidInputError(f"collar_width must be positive, got {collar_width}")
    if len(Xi) == 0:
        raise InvalidInputError("cannot extend an empty point set")
    Omega = Omega.core()
    if not np.all(Omega.contains(Xi.points)):
        raise InvalidInputError("Xi is not contained in Omega")

    probe_density = probe_density or geometry_settings.probe_density
    region = Omega.dilated(collar_width)
    lattice = region.probe_grid(probe_density)
    dist_to_xi, _ = Xi.tree.query(lattice, k=1)
    in_omega = Omega.contains(lattice)

    covered = float(np.max(dist_to_xi[in_omega])) if np.any(in_omega) else 0.0
    if h is None:
        h = fill_distance(Xi, Omega, probe_density)
    h = max(float(h), covered)
    if h <= 0:
        raise InvalidInputError("net spacing h must be positive")

    candidates = lattice[(~in_omega) & (dist_to_xi >= h)]
    added = _greedy_net(candidates, h)
    logger.debug(f"Extended {len(Xi)} points by {len(added)} collar points (h={h:.4g}, width={collar_width:.4g})")
    if len(added) == 0:
        return PointSet(Xi.points, region)
    return PointSet(np.vstack([Xi.points, added]), region)


def _greedy_net(candidates: np.ndarray, eps: float) -> np.ndarray:
    """Sequential maximal eps-net: keep a candidate iff it is >= eps from every kept one."""
    d = candidates.shape[1] if candidates.ndim == 2 else 1
    buckets: Dict[Cell, List[int]] = {}
    accepted: List[np.ndarray] = []
    offsets = np.array(np.meshgrid(*[[-1, 0, 1]] * d, indexing="ij")).reshape(d, -1).T
    for x in candidates:
        cell = tuple(floor(c / eps) for c in x)
        clear = True
        for off in offsets:
            for j in buckets.get(tuple(int(c + o) for c, o in zip(cell, off)), ()):
                if np.linalg.norm(accepted[j] - x) < eps:
                    clear = False
                    break
            if not clear:
                break
        if clear:
            buckets.setdefault(cell, []).append(len(accepted))
            accepted.append(x)
    if not accepted:
        return np.empty((0, d))
    return np.vstack(accepted)
