"""Energy-stable SAV finite element solver for the Cahn-Hilliard equation."""

from chsav._core import (
    Mesh,
    build_unit_square_mesh,
    run_simulation,
    shifted_energy,
    spatial_study,
    temporal_study,
    write_snapshot,
)

__all__ = [
    "Mesh",
    "build_unit_square_mesh",
    "run_simulation",
    "shifted_energy",
    "spatial_study",
    "temporal_study",
    "write_snapshot",
]
