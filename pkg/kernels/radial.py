from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from kernels.bessel import matern_profile
from kernels.spec import KernelFamily, KernelSpec


def radial_profile(spec: KernelSpec, r: np.ndarray) -> np.ndarray:
    """Kernel as a function of distance, vectorized over ``r >= 0``."""
    r = np.asarray(r, dtype=float)
    if spec.family == KernelFamily.MATERN:
        return spec.normalization * matern_profile(spec.nu, r)
    power = 2 * spec.m - spec.d
    if spec.d % 2 == 1:
        return spec.normalization * r**power
    out = np.zeros_like(r)
    pos = r > 0
    out[pos] = r[pos] ** power * np.log(r[pos])
    return spec.normalization * out


def kernel_eval(spec: KernelSpec, x: np.ndarray, y: np.ndarray) -> float:
    r = float(np.linalg.norm(np.asarray(x, dtype=float) - np.asarray(y, dtype=float)))
    return float(radial_profile(spec, np.array([r]))[0])


def kernel_matrix(spec: KernelSpec, A: np.ndarray, B: Optional[np.ndarray] = None) -> np.ndarray:
    """Collocation matrix k(a_i, b_j); ``B`` defaults to ``A`` and the result is then exactly symmetric."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if B is None:
        r = cdist(A, A)
        r = np.triu(r) + np.triu(r, 1).T
        return radial_profile(spec, r)
    return radial_profile(spec, cdist(A, np.atleast_2d(np.asarray(B, dtype=float))))
