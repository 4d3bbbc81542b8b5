from enum import Enum
from itertools import combinations, product
from math import gamma, pi
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from utils.errors import InvalidInputError


def unit_ball_volume(d: int) -> float:
    """Volume ω_d of the unit ball in R^d."""
    return pi ** (d / 2) / gamma(d / 2 + 1)


class DomainKind(str, Enum):
    BOX = "box"
    BALL = "ball"


class DomainRegion(BaseModel):
    """An axis-aligned box or a Euclidean ball, optionally dilated by ``margin``.

    The region is ``{x : dist(x, core) <= margin}`` where ``core`` is the box or ball. With
    ``margin = 0`` this is the plain box or ball; a positive margin describes Ω together with a
    collar of that width.
    """

    model_config = ConfigDict(frozen=True)

    kind: DomainKind
    # Box corners
    lower: Optional[Tuple[float, ...]] = None
    upper: Optional[Tuple[float, ...]] = None
    # Ball center and radius
    center: Optional[Tuple[float, ...]] = None
    radius: Optional[float] = None
    margin: float = 0.0
    # Radius bound r_Ω up to which boundary regularity is probed
    inradius: Optional[float] = None

    @model_validator(mode="after")
    def check_geometry(self) -> "DomainRegion":
        if self.kind == DomainKind.BOX:
            if self.lower is None or self.upper is None or len(self.lower) != len(self.upper):
                raise InvalidInputError("box domains need lower and upper corners of equal dimension")
            if any(hi <= lo for lo, hi in zip(self.lower, self.upper)):
                raise InvalidInputError(f"box has non-positive volume: {self.lower} .. {self.upper}")
        else:
            if self.center is None or self.radius is None:
                raise InvalidInputError("ball domains need a center and a radius")
            if self.radius <= 0:
                raise InvalidInputError(f"ball radius must be positive, got {self.radius}")
        if self.margin < 0:
            raise InvalidInputError(f"margin must be non-negative, got {self.margin}")
        if len(self.core_bounds()[0]) < 1:
            raise InvalidInputError("domain dimension must be at least 1")
        return self

    @classmethod
    def box(cls, lower: List[float], upper: List[float], inradius: Optional[float] = None) -> "DomainRegion":
        return cls(kind=DomainKind.BOX, lower=tuple(lower), upper=tuple(upper), inradius=inradius)

    @classmethod
    def unit_cube(cls, d: int) -> "DomainRegion":
        return cls.box([0.0] * d, [1.0] * d, inradius=0.5)

    @classmethod
    def ball(cls, center: List[float], radius: float, inradius: Optional[float] = None) -> "DomainRegion":
        return cls(kind=DomainKind.BALL, center=tuple(center), radius=radius, inradius=inradius)

    @property
    def dim(self) -> int:
        return len(self.core_bounds()[0])

    @property
    def r_omega(self) -> float:
        """Inradius parameter used by the boundary regularity probe."""
        if self.inradius is not None:
            return self.inradius
        lo, hi = self.core_bounds()
        return float(np.min(hi - lo)) / 2

    def core_bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.kind == DomainKind.BOX:
            return np.asarray(self.lower, dtype=float), np.asarray(self.upper, dtype=float)
        c = np.asarray(self.center, dtype=float)
        return c - self.radius, c + self.radius

    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        """Bounding box of the (dilated) region."""
        lo, hi = self.core_bounds()
        return lo - self.margin, hi + self.margin

    def distance_to_core(self, points: np.ndarray) -> np.ndarray:
        """Euclidean distance from each point to the undilated box or ball (0 inside)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.kind == DomainKind.BOX:
            lo, hi = self.core_bounds()
            gap = np.maximum(lo - pts, 0.0) + np.maximum(pts - hi, 0.0)
            return np.sqrt(np.sum(gap * gap, axis=1))
        c = np.asarray(self.center, dtype=float)
        return np.maximum(np.linalg.norm(pts - c, axis=1) - self.radius, 0.0)

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Exact membership test for every row of ``points``."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.margin == 0.0:
            if self.kind == DomainKind.BOX:
                lo, hi = self.core_bounds()
                return np.all((pts >= lo) & (pts <= hi), axis=1)
            c = np.asarray(self.center, dtype=float)
            return np.sum((pts - c) ** 2, axis=1) <= self.radius**2
        return self.distance_to_core(pts) <= self.margin

    def volume(self) -> float:
        """Exact volume; dilated boxes use the Steiner formula."""
        d = self.dim
        if self.kind == DomainKind.BALL:
            return unit_ball_volume(d) * (self.radius + self.margin) ** d
        lo, hi = self.core_bounds()
        sides = hi - lo
        total = 0.0
        for k in range(d + 1):
            e_k = sum(float(np.prod(sides[list(c)])) for c in combinations(range(d), k))
            total += e_k * unit_ball_volume(d - k) * self.margin ** (d - k)
        return total

    def dilated(self, width: float) -> "DomainRegion":
        if width <= 0:
            raise InvalidInputError(f"collar width must be positive, got {width}")
        return self.model_copy(update={"margin": self.margin + width})

    def core(self) -> "DomainRegion":
        return self.model_copy(update={"margin": 0.0})

    def probe_grid(self, probe_density: int) -> np.ndarray:
        """Regular lattice with ``probe_density`` nodes per axis over the bounding box, clipped to the region."""
        if probe_density < 2:
            raise InvalidInputError(f"probe_density must be at least 2, got {probe_density}")
        lo, hi = self.bounds()
        axes = [np.linspace(a, b, probe_density) for a, b in zip(lo, hi)]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, self.dim)
        return mesh[self.contains(mesh)]

    def extreme_points(self) -> np.ndarray:
        """Corners of a box, or the 2d axis poles of a ball (undilated)."""
        lo, hi = self.core_bounds()
        if self.kind == DomainKind.BOX:
            return np.array(list(product(*zip(lo, hi))), dtype=float)
        c = np.asarray(self.center, dtype=float)
        eye = np.eye(self.dim) * self.radius
        return np.vstack([c + eye, c - eye])
