from pydantic_settings import BaseSettings, SettingsConfigDict


class InterpolationSettings(BaseSettings):
    """Interpolation settings that can be set using environment variables.

    Reference: https://docs.pydantic.dev/latest/usage/pydantic_settings/
    """

    model_config = SettingsConfigDict(env_prefix="LAGRANGEKIT_")

    # Condition estimates above this are logged as warnings
    condition_warn: float = 1e12
    # Condition estimates above this abort the factorization
    condition_max: float = 1e15
    # Relative tolerance of the polynomial side conditions sum_z a_z p(z) = 0, raised to
    # machine epsilon times the condition estimate for ill-conditioned solves
    side_condition_rtol: float = 1e-10
    # Cardinality tolerance max |chi_xi(zeta) - delta|
    cardinal_tol: float = 1e-7
    # Evaluation points processed per block
    eval_chunk: int = 4096


# Create InterpolationSettings object
interpolation_settings = InterpolationSettings()
