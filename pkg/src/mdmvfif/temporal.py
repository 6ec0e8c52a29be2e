"""Temporal stage: rotation angles between slices and a shared 1-D time kernel."""

import numpy as np

from .errors import DegenerateSlice, KernelTooLarge, SeriesTooShort
from .kernels import count_out_of_range, kernel_spectrum, make_kernel_1d
from .oscillation import filter_length_from_spacing, local_extrema
from .sift import sift_spectral


def rotation_angles(cube):
    """Angle between consecutive time slices, each flattened to one vector.

    Evaluated as ``2 atan2(|a - b|, |a + b|)`` on the unit vectors, which is
    the arccos of their normalized inner product without its loss of
    precision near 0 and pi.  Returns ``T - 1`` angles in [0, pi].
    """
    cube = np.asarray(cube, dtype=np.float64)
    T = cube.shape[-1]
    if T < 2:
        raise SeriesTooShort(f"need at least 2 time steps, got {T}")
    X = cube.reshape(-1, T)
    norms = np.sqrt(np.einsum("it,it->t", X, X))
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise DegenerateSlice(int(zero[0]))
    U = X / norms
    a, b = U[:, 1:], U[:, :-1]
    diff = np.sqrt(np.einsum("it,it->t", a - b, a - b))
    summ = np.sqrt(np.einsum("it,it->t", a + b, a + b))
    return 2.0 * np.arctan2(diff, summ)


def temporal_filter_length(theta, multiplier=2.0):
    """``multiplier`` times the mean spacing between extrema of the angle series."""
    return filter_length_from_spacing(local_extrema(theta), multiplier)


def temporal_spectrum(T, half_length):
    if 2 * half_length + 1 > T:
        raise KernelTooLarge(f"time kernel of half length {half_length} exceeds {T} steps")
    raw = kernel_spectrum(make_kernel_1d(half_length), (T,), clamp=False)
    return np.clip(raw, 0.0, 1.0), count_out_of_range(raw)


def extract_temporal_imf(cube, half_length, stop, n_iter=None, workers=None):
    """Sift along time at every location with one shared kernel and iteration count."""
    cube = np.asarray(cube, dtype=np.float64)
    spectrum, _ = temporal_spectrum(cube.shape[-1], half_length)
    return sift_spectral(cube, spectrum, stop, axes=(cube.ndim - 1,), n_iter=n_iter, workers=workers)
