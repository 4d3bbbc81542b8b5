from kernels.bessel import bessel_k, matern_profile
from kernels.norms import kernel_sobolev_norm_estimate
from kernels.operator import get_available_families, get_kernel_spec, thin_plate
from kernels.polynomials import PolynomialBasis, monomial_basis, poly_eval, polynomial_basis, vandermonde
from kernels.radial import kernel_eval, kernel_matrix, radial_profile
from kernels.spec import KernelFamily, KernelSpec
