"""Multidimensional multivariate fast iterative filtering for space-time cubes.

Cubes are float64 arrays with the spatial axes first and time last.
"""

from ._backend import BACKEND
from .core import DecompositionResult, StageRecord, decompose, has_spatial_oscillation, has_temporal_oscillation, st_fif
from .errors import *  # noqa: F401,F403  (exception classes)
from .kernels import (
    Kernel1D,
    KernelND,
    SupportSpec,
    kernel_spectrum,
    make_kernel_1d,
    make_kernel_nd,
    mollifier,
    product_kernel,
)
from .oscillation import (
    ExtremaReport,
    estimate_spatial_support,
    local_extrema,
    min_support_over_time,
    per_slice_supports,
)
from .sift import StopConfig, extend_boundary, sift_spectral, trim_boundary
from .spatial import extract_spatial_imf
from .temporal import extract_temporal_imf, rotation_angles, temporal_filter_length

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DecompositionResult",
    "ExtremaReport",
    "Kernel1D",
    "KernelND",
    "StageRecord",
    "StopConfig",
    "SupportSpec",
    "decompose",
    "estimate_spatial_support",
    "extend_boundary",
    "extract_spatial_imf",
    "extract_temporal_imf",
    "has_spatial_oscillation",
    "has_temporal_oscillation",
    "kernel_spectrum",
    "local_extrema",
    "make_kernel_1d",
    "make_kernel_nd",
    "min_support_over_time",
    "mollifier",
    "per_slice_supports",
    "product_kernel",
    "rotation_angles",
    "sift_spectral",
    "st_fif",
    "temporal_filter_length",
    "trim_boundary",
]
