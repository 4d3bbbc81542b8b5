from pydantic_settings import BaseSettings, SettingsConfigDict


class DiagnosticsSettings(BaseSettings):
    """Diagnostics settings that can be set using environment variables.

    Reference: https://docs.pydantic.dev/latest/usage/pydantic_settings/
    """

    model_config = SettingsConfigDict(env_prefix="LAGRANGEKIT_")

    # Samples at or below this magnitude are excluded from log fits
    fit_floor: float = 1e-13
    # Usable samples required by the pointwise decay fit
    min_pointwise_samples: int = 10
    # Distinct distance bins required by the decay fits
    min_fit_bins: int = 3
    # Points required by the coefficient decay fit
    min_coefficient_points: int = 50
    # Quadrature nodes per fill distance when a grid is derived from h
    nodes_per_h: float = 3.0
    # Bounds on quadrature nodes per axis
    min_nodes_per_axis: int = 16
    max_nodes_per_axis: int = 256
    # Random coefficient vectors per norm-ratio estimate
    trials: int = 20
    # Riesz check passes while c_hat stays above this fraction of its value at the coarsest h
    riesz_fraction: float = 0.25
    # and while max / min of c_hat stays below this drift
    riesz_drift: float = 4.0
    # Allowed relative spread of fitted decay rates across an h-sweep
    stationarity_drift: float = 0.25
    # Allowed max/min spread of the equicontinuity quotient across an h-sweep
    equicontinuity_drift: float = 10.0
    # Noise floor used by monotonicity checks
    monotone_floor: float = 1e-12
    # Evaluation points per block in norm computations
    eval_chunk: int = 2048


# Create DiagnosticsSettings object
diagnostics_settings = DiagnosticsSettings()
