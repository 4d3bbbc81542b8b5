from geometry.domain import DomainKind, DomainRegion, unit_ball_volume
from geometry.extension import extend_pointset
from geometry.footprint import Footprint, footprint, footprint_radius, footprint_size_bound, footprints
from geometry.io import read_pointset, read_provenance, write_pointset
from geometry.points import (
    GeometryStats,
    PointSet,
    boundary_regularity_probe,
    fill_distance,
    generate_quasi_uniform,
    geometry_stats,
    separation_radius,
)
