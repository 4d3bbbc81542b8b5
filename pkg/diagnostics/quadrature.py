from dataclasses import dataclass
from math import ceil
from typing import Optional

import numpy as np

from diagnostics.settings import diagnostics_settings
from geometry.domain import DomainRegion
from utils.errors import InvalidInputError


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Midpoint rule over the cells of the bounding box of ``domain``.

    Cells whose midpoint lies outside the domain are dropped, so the weights sum to the exact
    volume for boxes and approximate it otherwise. ``spacing`` is the smallest cell width.
    """

    domain: DomainRegion
    nodes_per_axis: int
    nodes: np.ndarray
    weights: np.ndarray
    spacing: float

    @property
    def fd_step(self) -> float:
        """Finite-difference step; half a cell keeps every stencil inside the bounding box."""
        return self.spacing / 2

    @classmethod
    def midpoint(cls, domain: DomainRegion, nodes_per_axis: int) -> "QuadratureGrid":
        if nodes_per_axis < 1:
            raise InvalidInputError(f"nodes_per_axis must be positive, got {nodes_per_axis}")
        lo, hi = domain.bounds()
        width = (hi - lo) / nodes_per_axis
        axes = [lo[i] + (np.arange(nodes_per_axis) + 0.5) * width[i] for i in range(domain.dim)]
        nodes = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, domain.dim)
        nodes = nodes[domain.contains(nodes)]
        weights = np.full(len(nodes), float(np.prod(width)))
        return cls(domain, nodes_per_axis, nodes, weights, float(np.min(width)))

    @classmethod
    def for_resolution(cls, domain: DomainRegion, h: float, nodes_per_h: Optional[float] = None) -> "QuadratureGrid":
        """Grid with about ``nodes_per_h`` nodes per fill distance, clipped to the configured bounds."""
        if h <= 0:
            raise InvalidInputError(f"h must be positive, got {h}")
        nodes_per_h = nodes_per_h or diagnostics_settings.nodes_per_h
        lo, hi = domain.bounds()
        n = ceil(float(np.max(hi - lo)) * nodes_per_h / h)
        n = min(max(n, diagnostics_settings.min_nodes_per_axis), diagnostics_settings.max_nodes_per_axis)
        return cls.midpoint(domain, n)

    @property
    def volume(self) -> float:
        return float(np.sum(self.weights))
