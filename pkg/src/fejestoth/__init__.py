"""Acute-angle (Fejes Toth) energies of point configurations on spheres."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    ACUTE,
    FRAME,
    GEODESIC,
    DiscreteMeasure,
    FejesTothError,
    PointConfiguration,
    Potential,
    RngSpec,
    clamp_dot,
    random_configuration,
    validate_configuration,
)
from .energy import discrete_energy, frame_defect, measure_energy, second_moment, uniform_energy  # noqa: E402
from .constructions import conjectured_value, onb_configuration, onb_measure  # noqa: E402

__all__ = [
    "ACUTE",
    "FRAME",
    "GEODESIC",
    "DiscreteMeasure",
    "FejesTothError",
    "PointConfiguration",
    "Potential",
    "RngSpec",
    "clamp_dot",
    "conjectured_value",
    "discrete_energy",
    "frame_defect",
    "measure_energy",
    "onb_configuration",
    "onb_measure",
    "random_configuration",
    "second_moment",
    "uniform_energy",
    "validate_configuration",
]
