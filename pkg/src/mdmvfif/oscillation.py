"""Extrema detection and extrema-based filter-length estimation."""

from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import GridTooSmall, NoOscillation, SeriesTooShort
from .kernels import SupportSpec


class ExtremaReport(NamedTuple):
    positions: np.ndarray
    count: int


def local_extrema(series):
    """Interior strict local extrema of a 1-D series.

    A run of equal values counts once, at its left edge, when both of its
    neighbours lie on the same side of it. Endpoints are never extrema.
    """
    series = np.asarray(series, dtype=np.float64)
    if series.ndim != 1 or series.size < 3:
        raise SeriesTooShort(f"need a 1-D series of length >= 3, got shape {series.shape}")
    pos = _backend.extrema_positions(series)
    return ExtremaReport(pos, int(pos.size))


def round_half_up(x):
    return int(np.floor(x + 0.5))


def filter_length_from_spacing(report, multiplier):
    """``max(1, round(multiplier * mean gap between consecutive extrema))``."""
    if report.count < 2:
        raise NoOscillation(f"{report.count} extrema: series is a trend")
    gap = np.diff(np.asarray(report.positions, dtype=np.float64)).mean()
    return max(1, round_half_up(multiplier * gap))


def axis_cap(extent):
    """Largest admissible half-length on an axis of the given extent."""
    return max(1, extent // 2 - 1)


def axis_extrema_counts(cube, axis, n_spatial):
    """Extrema summed over all 1-D lines along ``axis`` for every time slice.

    ``cube`` has ``n_spatial`` leading spatial axes and optionally a trailing
    time axis; returns an int array of shape ``cube.shape[n_spatial:]``.
    """
    lines = np.moveaxis(cube, axis, -1)
    counts = _backend.extrema_counts(lines)
    # remaining spatial axes are the first n_spatial - 1 axes of counts
    return counts.sum(axis=tuple(range(n_spatial - 1)), dtype=np.int64)


def _check_grid(shape):
    if any(n < 3 for n in shape):
        raise GridTooSmall(f"every spatial extent must be >= 3, got {tuple(shape)}")


def _supports_from_counts(counts, shape, xi):
    size = int(np.prod(shape))
    half = []
    for a, extent in enumerate(shape):
        cap = axis_cap(extent)
        if counts[a] == 0:
            half.append(cap)
        else:
            half.append(min(cap, max(1, round_half_up(xi * size / counts[a]))))
    return SupportSpec(tuple(half))


def estimate_spatial_support(slice_, xi):
    """Per-axis half-lengths from the mean extrema spacing along that axis.

    ``half_a = round(xi * samples / extrema)`` where both totals run over all
    lines parallel to axis ``a``; an axis without extrema gets the largest
    admissible half-length.  Results are capped so the kernel fits the grid.
    """
    slice_ = np.asarray(slice_, dtype=np.float64)
    _check_grid(slice_.shape)
    n = slice_.ndim
    counts = [int(axis_extrema_counts(slice_, a, n)) for a in range(n)]
    return _supports_from_counts(counts, slice_.shape, xi)


def per_slice_supports(cube, xi):
    """``estimate_spatial_support`` of every time slice (time is the last axis)."""
    cube = np.asarray(cube, dtype=np.float64)
    shape = cube.shape[:-1]
    _check_grid(shape)
    n = len(shape)
    counts = np.stack([axis_extrema_counts(cube, a, n) for a in range(n)], axis=1)
    return [_supports_from_counts(c, shape, xi) for c in counts]


def min_support_over_time(cube, xi):
    """Elementwise minimum of the per-slice support estimates."""
    supports = per_slice_supports(cube, xi)
    out = supports[0]
    for s in supports[1:]:
        out = out.minimum(s)
    return out
