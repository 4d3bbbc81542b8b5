from dataclasses import dataclass

import numpy as np
from scipy import linalg

from interpolation.system import check_unisolvent
from kernels.polynomials import PolynomialBasis


@dataclass(frozen=True, eq=False)
class GramProjector:
    """Orthogonal projector P = Phi (Phi^T Phi)^{-1} Phi^T onto Π restricted to a point subset.

    P is applied through an orthonormal basis ``Q`` of range(Phi), so the Gram matrix is never
    inverted explicitly.
    """

    Phi: np.ndarray
    Q: np.ndarray

    @property
    def N(self) -> int:
        return self.Phi.shape[1]

    def apply(self, v: np.ndarray) -> np.ndarray:
        """P v."""
        v = np.asarray(v, dtype=float)
        return self.Q @ (self.Q.T @ v)

    def complement(self, v: np.ndarray) -> np.ndarray:
        """P^⊥ v = v - P v."""
        v = np.asarray(v, dtype=float)
        return v - self.apply(v)

    def gram(self) -> np.ndarray:
        return self.Phi.T @ self.Phi

    def gram_inverse_norm(self) -> float:
        """‖(Phi^T Phi)^{-1}‖_2, zero when Π is trivial."""
        if self.N == 0:
            return 0.0
        return float(1.0 / linalg.eigvalsh(self.gram())[0])


def gram_projector(basis: PolynomialBasis, pts: np.ndarray) -> GramProjector:
    """Build the projector for ``pts``; raises NonUnisolventError when Phi is rank deficient."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    Phi = check_unisolvent(basis, pts)
    if basis.N == 0:
        return GramProjector(Phi=Phi, Q=np.zeros((len(pts), 0)))
    Q, _ = linalg.qr(Phi, mode="economic")
    return GramProjector(Phi=Phi, Q=Q)
