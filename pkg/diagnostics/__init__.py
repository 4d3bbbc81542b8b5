from diagnostics.checks import (
    bernstein_ratio,
    bernstein_sweep,
    equicontinuity_probe,
    riesz_lower_check,
    riesz_lower_constant,
    synthesis_norm_check,
    synthesis_ratio,
    trial_vectors,
)
from diagnostics.experiments import (
    decay_sweep,
    gram_report,
    kernel_norm_report,
    level_decay_fits,
    local_error_h_sweep,
    local_error_sweep,
    regularity_report,
    spectrum_report,
    tail_rate_sweep,
    truncation_sweep,
)
from diagnostics.fits import (
    DecayFit,
    DecayRegime,
    RateReport,
    fit_coefficient_decay,
    fit_energy_decay,
    fit_exponential_decay,
    fit_pointwise_decay,
    line_fit,
    rate_report,
    report_to_frame,
)
from diagnostics.levels import SweepLevel, build_level, calibrate_K, pointwise_rate
from diagnostics.norms import energy_norm, l2_norm, lp_norm, norm_gram, sobolev_norm_fd
from diagnostics.operator import CheckType, get_available_checks, run_check
from diagnostics.quadrature import QuadratureGrid
