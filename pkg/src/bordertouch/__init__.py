"""Border-based touch sensing on semi-elastic textile membranes.

Simulates fabric deformation under a single indent, models border stretch
sensors, generates datasets, trains from-scratch regressors/classifiers, and
reproduces the arrangement-sweep, localization, and depth-classification
experiments.
"""

from .geometry import (
    FrameSpec,
    MarkerGrid,
    Rect,
    SurfaceRms,
    TouchEvent,
    deform_point,
    deform_z,
    ray_border_intersection,
    surface_rms,
)
from .sensing import (
    Arrangement,
    GaugeModel,
    NoiseModel,
    SensorSegment,
    apply_noise,
    feature_vector,
    generate_arrangement,
    load_arrangement,
    measure_stretch,
    save_arrangement,
    to_resistance,
)

__version__ = "0.1.0"

__all__ = [
    "FrameSpec", "Rect", "TouchEvent", "MarkerGrid", "SurfaceRms",
    "ray_border_intersection", "deform_z", "deform_point", "surface_rms",
    "SensorSegment", "Arrangement", "NoiseModel", "GaugeModel",
    "measure_stretch", "feature_vector", "apply_noise", "to_resistance",
    "generate_arrangement", "load_arrangement", "save_arrangement",
]
