from dataclasses import dataclass
from math import log
from typing import List

import numpy as np

from geometry.points import PointSet
from utils.errors import InvalidInputError


def footprint_radius(K: float, h: float) -> float:
    """Radius K h |log h| (natural log)."""
    return K * h * abs(log(h))


@dataclass(frozen=True, eq=False)
class Footprint:
    """Centers of ``X`` within the closed ball of radius K h |log h| around ``X[center_index]``."""

    center_index: int
    member_indices: np.ndarray
    radius: float
    K: float

    def __len__(self) -> int:
        return len(self.member_indices)

    @property
    def local_center(self) -> int:
        """Position of the center inside ``member_indices``."""
        return int(np.searchsorted(self.member_indices, self.center_index))


def footprint(X: PointSet, xi: int, K: float, h: float) -> Footprint:
    """Return the footprint of center ``xi``; members are sorted by index."""
    if not 0 < h < 1:
        raise InvalidInputError(f"footprints need 0 < h < 1, got h={h}")
    if K <= 0:
        raise InvalidInputError(f"K must be positive, got {K}")
    if not 0 <= xi < len(X):
        raise InvalidInputError(f"center index {xi} out of range for {len(X)} points")
    radius = footprint_radius(K, h)
    center = X.points[xi]
    # over-query slightly, then apply the exact closed-ball predicate
    candidates = np.asarray(X.tree.query_ball_point(center, radius * (1 + 1e-9) + 1e-15), dtype=int)
    dist = np.linalg.norm(X.points[candidates] - center, axis=1)
    members = np.sort(candidates[dist <= radius])
    return Footprint(center_index=int(xi), member_indices=members, radius=radius, K=float(K))


def footprints(X: PointSet, indices: List[int], K: float, h: float) -> List[Footprint]:
    return [footprint(X, int(i), K, h) for i in indices]


def footprint_size_bound(X: PointSet, indices: List[int], K: float, h: float, rho: float) -> float:
    """Largest ratio #Υ(ξ) / (ρ^d |log h|^d) over the given centers."""
    scale = (rho * abs(log(h))) ** X.dim
    return max(len(f) for f in footprints(X, indices, K, h)) / scale
