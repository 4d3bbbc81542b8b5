from localization.gram import GramReport, ball_points, gram_bound_sweep, gram_inverse_norm
from localization.local import LocalLagrange, build_local_basis, solve_local_lagrange, suggest_K
from localization.operator import get_available_variants, get_basis
from localization.projector import GramProjector, gram_projector
from localization.spectrum import FootprintSpectrum, footprint_spectrum
from localization.truncation import TruncationResult, truncate_lagrange, truncation_error
