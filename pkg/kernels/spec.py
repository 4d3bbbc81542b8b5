from enum import Enum
from math import ceil, gamma
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from utils.errors import InvalidSpecError


class KernelFamily(str, Enum):
    MATERN = "matern"
    SURFACE_SPLINE = "surface_spline"


class KernelSpec(BaseModel):
    """Kernel family, smoothness order ``m`` and dimension ``d``.

    Serialized as ``{"family": "matern" | "surface_spline", "m": int, "d": int}``. The
    normalization constant is derived, not configured: Matérn kernels are scaled to
    ``k(x, x) = 1`` and surface splines carry the sign that makes them conditionally positive
    definite with respect to polynomials of degree ``m - 1``.
    """

    model_config = ConfigDict(frozen=True)

    family: KernelFamily
    m: int
    d: int

    @model_validator(mode="after")
    def check_order(self) -> "KernelSpec":
        if self.d < 1:
            raise InvalidSpecError(f"dimension must be at least 1, got d={self.d}")
        if 2 * self.m <= self.d:
            raise InvalidSpecError(f"order must satisfy m > d/2, got m={self.m}, d={self.d}")
        return self

    @property
    def nu(self) -> float:
        """Bessel order / surface spline exponent offset m - d/2."""
        return self.m - self.d / 2

    @property
    def cpd_degree(self) -> Optional[int]:
        """Degree of the auxiliary polynomial space, or None for positive definite kernels."""
        return self.m - 1 if self.family == KernelFamily.SURFACE_SPLINE else None

    @property
    def normalization(self) -> float:
        if self.family == KernelFamily.MATERN:
            return 1.0 / (2 ** (self.nu - 1) * gamma(self.nu))
        if self.d % 2 == 1:
            return float((-1) ** ceil(self.nu))
        return float((-1) ** (self.m - self.d // 2 + 1))

    @property
    def label(self) -> str:
        return f"{self.family.value}(m={self.m}, d={self.d})"
