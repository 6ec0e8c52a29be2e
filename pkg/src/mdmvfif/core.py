"""Outer loops: alternating space/time decomposition and the joint space-time variant."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .errors import DataError, DegenerateSlice, GridTooSmall, MdMvFIFError, NoOscillation, StageError
from .kernels import count_out_of_range, kernel_spectrum, make_kernel_1d, make_kernel_nd, product_kernel
from .oscillation import axis_cap, axis_extrema_counts, local_extrema, min_support_over_time
from .sift import extend_boundary, sift_spectral, trim_boundary
from .spatial import extract_spatial_imf, spatial_spectrum
from .temporal import (
    extract_temporal_imf,
    rotation_angles,
    temporal_filter_length,
    temporal_spectrum,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StageRecord:
    round: int
    stage: str  # "space", "time" or "spacetime"
    size: Tuple[int, ...]  # spatial half-lengths, (L,) for time, both for spacetime
    iterations: int
    clamped_bins: int


@dataclass
class DecompositionResult:
    spatial_imfs: List[np.ndarray] = field(default_factory=list)
    temporal_imfs: List[np.ndarray] = field(default_factory=list)
    residual: Optional[np.ndarray] = None
    diagnostics: List[StageRecord] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def reconstruct(self):
        total = np.array(self.residual, dtype=np.float64, copy=True)
        for imf in (*self.spatial_imfs, *self.temporal_imfs):
            total += imf
        return total


def has_spatial_oscillation(cube):
    """True if some time slice has >= 2 extrema summed over the lines of some axis."""
    cube = np.asarray(cube, dtype=np.float64)
    n = cube.ndim - 1
    if n < 1:
        return False
    for a in range(n):
        if cube.shape[a] < 3:
            continue
        if (axis_extrema_counts(cube, a, n) >= 2).any():
            return True
    return False


def has_temporal_oscillation(cube, warnings=None):
    """True if the rotation-angle series exists and has >= 2 extrema."""
    cube = np.asarray(cube, dtype=np.float64)
    if cube.shape[-1] < 4:  # fewer than 3 angles cannot hold an interior extremum
        return False
    try:
        theta = rotation_angles(cube)
    except DegenerateSlice as exc:
        msg = f"temporal oscillation test skipped: {exc}"
        log.warning(msg)
        if warnings is not None:
            warnings.append(msg)
        return False
    return local_extrema(theta).count >= 2


def _check_shape(cube):
    if cube.ndim < 2:
        raise GridTooSmall(f"need at least one spatial axis plus time, got shape {cube.shape}")
    if not np.isfinite(cube).all():
        raise DataError("cube contains NaN or Inf")
    if any(n < 3 for n in cube.shape):
        raise GridTooSmall(f"every extent must be >= 3, got {cube.shape}")


def _time_length(f, xi):
    T = f.shape[-1]
    try:
        L = temporal_filter_length(rotation_angles(f), 2 * xi)
    except (NoOscillation, DegenerateSlice):
        return axis_cap(T)
    return min(L, (T - 1) // 2)


def _extend(cube, extend):
    if extend in (None, "none"):
        return cube, None
    if extend != "reflect":
        raise ValueError(f"unknown boundary mode {extend!r}")
    pad = [n // 4 for n in cube.shape]
    return extend_boundary(cube, pad), pad


def decompose(cube, xi, stop, extend=None, workers=None):
    """Alternate one spatial and one temporal IMF per round until no oscillation is left.

    A stage whose oscillation test fails is skipped for that round; the loop
    ends when both are skipped or both IMF lists hold ``stop.max_imfs`` entries.

    ``xi`` scales both filter sizes: the spatial half-lengths are ``xi`` times
    the mean extrema spacing, the time half-length is ``2 xi`` times the mean
    extrema spacing of the rotation angles (capped at ``(T - 1) // 2``).
    """
    cube = np.asarray(cube, dtype=np.float64)
    _check_shape(cube)
    f, pad = _extend(cube, extend)
    f = f.copy()
    grid = f.shape[:-1]
    T = f.shape[-1]
    res = DecompositionResult()

    rnd = 0
    while True:
        rnd += 1
        ran = False
        if len(res.spatial_imfs) < stop.max_imfs and has_spatial_oscillation(f):
            try:
                support = min_support_over_time(f, xi)
                _, clamped = spatial_spectrum(grid, support)
                imf, n_s = extract_spatial_imf(f, support, stop, workers=workers)
            except MdMvFIFError as exc:
                raise StageError(rnd, "space", exc) from exc
            f -= imf
            res.spatial_imfs.append(imf)
            res.diagnostics.append(StageRecord(rnd, "space", support.half_lengths, n_s, clamped))
            log.debug("round %d space: support %s, %d iterations", rnd, support.half_lengths, n_s)
            ran = True
        if len(res.temporal_imfs) < stop.max_imfs and has_temporal_oscillation(f, res.warnings):
            try:
                L = min(temporal_filter_length(rotation_angles(f), 2 * xi), (T - 1) // 2)
                _, clamped = temporal_spectrum(T, L)
                imf, n_t = extract_temporal_imf(f, L, stop, workers=workers)
            except MdMvFIFError as exc:
                raise StageError(rnd, "time", exc) from exc
            f -= imf
            res.temporal_imfs.append(imf)
            res.diagnostics.append(StageRecord(rnd, "time", (L,), n_t, clamped))
            log.debug("round %d time: L=%d, %d iterations", rnd, L, n_t)
            ran = True
        if not ran:
            break

    res.residual = f
    if pad is not None:
        res.spatial_imfs = [trim_boundary(a, pad) for a in res.spatial_imfs]
        res.temporal_imfs = [trim_boundary(a, pad) for a in res.temporal_imfs]
        res.residual = trim_boundary(f, pad)
    return res


def st_fif(cube, xi, stop, extend=None, workers=None, return_diagnostics=False):
    """Joint space-time sifting with one separable (n+1)-D kernel per IMF.

    Returns the list of IMFs with the residual as its last entry (and the
    per-IMF ``StageRecord`` list when ``return_diagnostics`` is set).
    """
    cube = np.asarray(cube, dtype=np.float64)
    _check_shape(cube)
    f, pad = _extend(cube, extend)
    f = f.copy()
    imfs, records = [], []

    rnd = 0
    while len(imfs) < stop.max_imfs and (has_spatial_oscillation(f) or has_temporal_oscillation(f)):
        rnd += 1
        try:
            L = _time_length(f, xi)
            support = min_support_over_time(f, xi)
            kernel = product_kernel(make_kernel_nd(support), make_kernel_1d(L))
            raw = kernel_spectrum(kernel, f.shape, clamp=False)
            imf, n = sift_spectral(f, np.clip(raw, 0.0, 1.0), stop, axes=tuple(range(f.ndim)), workers=workers)
        except MdMvFIFError as exc:
            raise StageError(rnd, "spacetime", exc) from exc
        f -= imf
        imfs.append(imf)
        records.append(StageRecord(rnd, "spacetime", support.half_lengths + (L,), n, count_out_of_range(raw)))

    imfs.append(f)
    if pad is not None:
        imfs = [trim_boundary(a, pad) for a in imfs]
    if return_diagnostics:
        return imfs, records
    return imfs
