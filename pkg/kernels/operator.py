from typing import List

from kernels.spec import KernelFamily, KernelSpec


def get_available_families() -> List[str]:
    """Returns a list of all available kernel family IDs."""
    return [family.value for family in KernelFamily]


def get_kernel_spec(family: str, m: int, d: int) -> KernelSpec:
    return KernelSpec(family=KernelFamily(family), m=m, d=d)


def thin_plate(d: int = 2) -> KernelSpec:
    """Surface spline of order m = 2, the thin-plate spline in the plane."""
    return KernelSpec(family=KernelFamily.SURFACE_SPLINE, m=2, d=d)
