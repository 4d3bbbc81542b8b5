from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class CliSettings(BaseSettings):
    """CLI settings that can be set using environment variables.

    Reference: https://docs.pydantic.dev/latest/usage/pydantic_settings/
    """

    model_config = SettingsConfigDict(env_prefix="LAGRANGEKIT_")

    # Fallback for --threads
    threads: Optional[int] = None
    # Fallback for --out
    out_dir: str = "runs"
    # Reported in every output file
    version: str = "0.1.0"


# Create CliSettings object
cli_settings = CliSettings()
