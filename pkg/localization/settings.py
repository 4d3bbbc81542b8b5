from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class LocalizationSettings(BaseSettings):
    """Localization settings that can be set using environment variables.

    Reference: https://docs.pydantic.dev/latest/usage/pydantic_settings/
    """

    model_config = SettingsConfigDict(env_prefix="LAGRANGEKIT_")

    # Worker threads for footprint solves, None lets the executor decide
    threads: Optional[int] = None
    # Footprint parameter K used when none is given
    default_K: float = 4.0
    # Safety margin added to the K suggested from a measured decay rate
    K_margin: float = 1.0


# Create LocalizationSettings object
localization_settings = LocalizationSettings()
