from pydantic_settings import BaseSettings, SettingsConfigDict


class GeometrySettings(BaseSettings):
    """Geometry settings that can be set using environment variables.

    Reference: https://docs.pydantic.dev/latest/usage/pydantic_settings/
    """

    model_config = SettingsConfigDict(env_prefix="LAGRANGEKIT_")

    # Probe points per axis used to estimate fill distances
    probe_density: int = 200
    # Densest lattice tried when the probe lattice misses the domain entirely
    max_probe_density: int = 1600
    # Jitter of the quasi-uniform generator, as a fraction of the cell width
    jitter: float = 0.2
    # Monte-Carlo samples per (x, r) pair of the boundary regularity probe
    regularity_samples: int = 10_000
    # Random interior probe centers of the boundary regularity probe
    regularity_interior_probes: int = 16


# Create GeometrySettings object
geometry_settings = GeometrySettings()
