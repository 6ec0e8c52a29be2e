"""Spatial stage: one n-D kernel applied to every time slice."""

import numpy as np

from .kernels import count_out_of_range, kernel_spectrum, make_kernel_nd
from .sift import sift_spectral


def spatial_spectrum(grid_shape, support, profile=None):
    """Clamped transfer function of the spatial kernel and the clamped-bin count."""
    kernel = make_kernel_nd(support) if profile is None else make_kernel_nd(support, profile)
    raw = kernel_spectrum(kernel, grid_shape, clamp=False)
    return np.clip(raw, 0.0, 1.0), count_out_of_range(raw)


def extract_spatial_imf(cube, support, stop, n_iter=None, workers=None):
    """Sift the whole cube with the kernel of ``support`` over its spatial axes.

    The time axis (last) is broadcast, so one iteration count is shared by all
    slices and the stopping norm runs over the entire cube.
    Returns ``(imf, iterations)``.
    """
    cube = np.asarray(cube, dtype=np.float64)
    grid = cube.shape[:-1]
    spectrum, _ = spatial_spectrum(grid, support)
    return sift_spectral(cube, spectrum, stop, axes=tuple(range(len(grid))), n_iter=n_iter, workers=workers)
