"""Occlusion robustness benchmarking toolkit.

Generates occluded variants of a labeled image set with an exact-coverage
guarantee and scores classifier predictions with per-level accuracy and a
normalized area-under-curve robustness metric.
"""

from occlubench.masks import (
    KindParams,
    OcclusionKind,
    OcclusionMask,
    OcclusionSpec,
    backend_name,
    generate,
    target_pixels,
)

__all__ = [
    "KindParams",
    "OcclusionKind",
    "OcclusionMask",
    "OcclusionSpec",
    "backend_name",
    "generate",
    "target_pixels",
]

__version__ = "0.1.0"
