"""Python interface to the object-augmented 2D mapping engine."""

from ._semmap import (
    ConfigError,
    DataError,
    __version__,
    hungarian,
    mahalanobis,
    ransac_plane,
    run_pipeline,
    wrap_angle,
)

__all__ = [
    "ConfigError",
    "DataError",
    "__version__",
    "hungarian",
    "mahalanobis",
    "ransac_plane",
    "run_pipeline",
    "wrap_angle",
]
