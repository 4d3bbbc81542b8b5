import numpy as np
from pydantic import BaseModel
from scipy import linalg

from geometry.footprint import Footprint
from geometry.points import PointSet
from interpolation.lagrange import full_coefficient_matrix
from interpolation.system import assemble
from kernels.spec import KernelSpec
from localization.projector import gram_projector


class FootprintSpectrum(BaseModel):
    """Spectral quantities of one footprint system.

    ``theta`` is the smallest eigenvalue of K restricted to range(P^⊥); ``coefficient_norm`` is
    ‖A_Υ‖_2 of the local coefficient block, which equals 1 / theta.
    """

    center_index: int
    size: int
    theta: float
    coefficient_norm: float
    gram_inverse_norm: float
    # ‖A_Υ‖_{1->1} against #Υ max |A_Υ|
    coefficient_l1_norm: float
    coefficient_l1_bound: float


def footprint_spectrum(spec: KernelSpec, X: PointSet, ups: Footprint) -> FootprintSpectrum:
    pts = X.points[ups.member_indices]
    system = assemble(spec, pts)
    projector = gram_projector(system.basis, pts)
    n, N = system.n, system.N
    if N:
        Q, _ = linalg.qr(projector.Phi, mode="full")
        complement = Q[:, N:]
    else:
        complement = np.eye(n)
    if complement.shape[1]:
        theta = float(linalg.eigvalsh(complement.T @ system.K @ complement)[0])
    else:
        theta = float("inf")

    A = full_coefficient_matrix(system).A
    return FootprintSpectrum(
        center_index=ups.center_index,
        size=n,
        theta=theta,
        coefficient_norm=float(np.linalg.norm(A, 2)),
        gram_inverse_norm=projector.gram_inverse_norm(),
        coefficient_l1_norm=float(np.linalg.norm(A, 1)),
        coefficient_l1_bound=float(n * np.max(np.abs(A))),
    )
