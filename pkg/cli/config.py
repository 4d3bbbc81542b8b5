import json
from hashlib import sha256
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from cli.settings import cli_settings
from diagnostics.operator import CheckType
from geometry.domain import DomainKind, DomainRegion
from interpolation.lagrange import BasisVariant
from kernels.spec import KernelFamily, KernelSpec
from utils.errors import InvalidInputError

SigmaValue = Union[Literal[0, 1, 2], Literal["m"]]


class KernelConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: KernelFamily = KernelFamily.SURFACE_SPLINE
    m: int = 2
    d: int = 2

    def to_spec(self) -> KernelSpec:
        return KernelSpec(family=self.family, m=self.m, d=self.d)


class DomainConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: DomainKind = DomainKind.BOX
    lower: Optional[List[float]] = None
    upper: Optional[List[float]] = None
    center: Optional[List[float]] = None
    radius: Optional[float] = None

    def to_region(self, d: int) -> DomainRegion:
        if self.kind == DomainKind.BOX:
            lower = self.lower if self.lower is not None else [0.0] * d
            upper = self.upper if self.upper is not None else [1.0] * d
            region = DomainRegion.box(lower, upper)
        else:
            center = self.center if self.center is not None else [0.0] * d
            region = DomainRegion.ball(center, self.radius if self.radius is not None else 1.0)
        if region.dim != d:
            raise InvalidInputError(f"domain dimension {region.dim} does not match kernel dimension {d}")
        return region


class ExperimentConfig(BaseModel):
    """One experiment run; every field has a default so the resolved config is always complete."""

    model_config = ConfigDict(extra="forbid")

    kernel: KernelConfig = Field(default_factory=KernelConfig)
    domain: DomainConfig = Field(default_factory=DomainConfig)
    n_list: List[int] = Field(default_factory=lambda: [100, 200, 400, 800])
    # Footprint parameter; calibrated from a decay fit on the coarsest level when unset
    K: Optional[float] = Field(None, gt=0)
    # Gram growth exponent used by the K calibration
    tau: float = Field(0.0, ge=0)
    K_list: List[float] = Field(default_factory=lambda: [2.0, 3.0, 4.0, 5.0])
    sigma: List[SigmaValue] = Field(default_factory=lambda: [0, 1, "m"])
    trials: int = Field(20, ge=1)
    seed: int = 0
    variant: BasisVariant = BasisVariant.FULL
    extend: bool = True
    checks: List[CheckType] = Field(default_factory=lambda: list(CheckType))
    out: str = Field(default_factory=lambda: cli_settings.out_dir)
    threads: Optional[int] = Field(default_factory=lambda: cli_settings.threads)

    @field_validator("n_list")
    @classmethod
    def check_n_list(cls, v: List[int]) -> List[int]:
        if not v or any(n < 1 for n in v):
            raise ValueError("n_list must hold positive point counts")
        return v

    @field_validator("K_list")
    @classmethod
    def check_K_list(cls, v: List[float]) -> List[float]:
        if any(K <= 0 for K in v):
            raise ValueError("K_list entries must be positive")
        return v

    @model_validator(mode="after")
    def check_derived(self) -> "ExperimentConfig":
        # kernel and domain errors surface as validation errors before any computation
        self.kernel.to_spec()
        self.domain.to_region(self.kernel.d)
        return self

    @property
    def spec(self) -> KernelSpec:
        return self.kernel.to_spec()

    @property
    def region(self) -> DomainRegion:
        return self.domain.to_region(self.kernel.d)

    def provenance_dump(self) -> Dict[str, Any]:
        """Config fields that determine numerical output; ``out`` and ``threads`` are excluded."""
        return self.model_dump(mode="json", exclude={"out", "threads"})


def parse_sigma(text: str) -> List[Union[int, str]]:
    """Parse a comma separated sigma list such as ``0,1,m``."""
    values: List[Union[int, str]] = []
    for token in text.split(","):
        token = token.strip()
        values.append(token if token == "m" else int(token))
    return values


def parse_int_list(text: str) -> List[int]:
    return [int(token) for token in text.split(",") if token.strip()]


def parse_float_list(text: str) -> List[float]:
    return [float(token) for token in text.split(",") if token.strip()]


def load_config(path: Optional[Path] = None, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Resolve a config: CLI overrides > JSON file > environment > defaults."""
    data: Dict[str, Any] = json.loads(Path(path).read_text()) if path is not None else {}
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return ExperimentConfig.model_validate(data)


def config_hash(config: ExperimentConfig) -> str:
    blob = json.dumps(config.provenance_dump(), sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return sha256(blob.encode("utf-8")).hexdigest()
