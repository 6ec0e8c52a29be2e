"""Frequency-domain sifting shared by every stage, plus boundary extension."""

from dataclasses import dataclass

import numpy as np
import scipy.fft as sp_fft

from . import _backend
from .errors import PadTooLarge, SpectrumOutOfRange


@dataclass(frozen=True)
class StopConfig:
    """Inner-loop threshold and iteration caps.

    delta: relative-change threshold on the running signal.
    max_inner: cap on inner iterations per IMF.
    max_imfs: cap on IMFs per stage.
    """

    delta: float
    max_inner: int
    max_imfs: int

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"delta must be > 0, got {self.delta}")
        if self.max_inner < 1 or self.max_imfs < 1:
            raise ValueError("max_inner and max_imfs must be >= 1")


def _pads(pad, ndim):
    pad = np.broadcast_to(np.asarray(pad, dtype=int), (ndim,))
    if (pad < 0).any():
        raise ValueError("pads must be nonnegative")
    return [int(p) for p in pad]


def extend_boundary(cube, pad):
    """Mirror-extend every axis by ``pad[a]`` samples on both ends (edge not repeated)."""
    cube = np.asarray(cube)
    pad = _pads(pad, cube.ndim)
    for a, (p, n) in enumerate(zip(pad, cube.shape)):
        if p > n:
            raise PadTooLarge(f"axis {a}: pad {p} exceeds extent {n}")
    return np.pad(cube, [(p, p) for p in pad], mode="reflect")


def trim_boundary(cube, pad):
    """Inverse of ``extend_boundary``: drop ``pad[a]`` samples from both ends."""
    cube = np.asarray(cube)
    pad = _pads(pad, cube.ndim)
    return cube[tuple(slice(p, n - p) for p, n in zip(pad, cube.shape))]


def _normalize_axes(axes, ndim):
    axes = tuple(sorted(a % ndim for a in axes))
    if axes != tuple(range(axes[0], axes[-1] + 1)):
        raise ValueError(f"transformed axes must be contiguous, got {axes}")
    if axes[0] != 0 and axes[-1] != ndim - 1:
        raise ValueError("transformed axes must be leading or trailing")
    return axes


def parseval_weights(shape):
    """Weights on an rfftn half-grid so weighted sums reproduce full-grid sums."""
    n = shape[-1]
    w = np.full(n // 2 + 1, 2.0)
    w[0] = 1.0
    if n % 2 == 0:
        w[-1] = 1.0
    return np.broadcast_to(w, tuple(shape[:-1]) + (n // 2 + 1,))


def sift_spectral(cube, spectrum, stop, axes=None, n_iter=None, workers=None):
    """Iterate ``f <- f - f * w`` in the frequency domain.

    ``spectrum`` is the (even, real) transfer function of ``w`` over the
    transformed ``axes`` of ``cube``; other axes are broadcast.  Each step
    multiplies the spectrum of the running signal by ``1 - spectrum`` and
    checks the relative change ``||f_k - f_{k-1}|| / ||f_{k-1}||`` through
    Parseval.  Iteration stops at the first ``k`` with change below
    ``stop.delta`` or at ``stop.max_inner``; pass ``n_iter`` to force an
    exact number of steps instead.

    Returns ``(imf, iterations)``.
    """
    cube = np.asarray(cube, dtype=np.float64)
    spectrum = np.asarray(spectrum, dtype=np.float64)
    if axes is None:
        axes = tuple(range(cube.ndim - spectrum.ndim, cube.ndim))
    axes = _normalize_axes(axes, cube.ndim)
    tshape = tuple(cube.shape[a] for a in axes)
    if spectrum.shape != tshape:
        raise ValueError(f"spectrum shape {spectrum.shape} does not match axes {tshape}")
    if spectrum.size and (spectrum.min() < 0.0 or spectrum.max() > 1.0):
        raise SpectrumOutOfRange(
            f"transfer values must lie in [0, 1], got [{spectrum.min()}, {spectrum.max()}]"
        )

    if not cube.any():
        return np.zeros_like(cube), 0
    F = sp_fft.rfftn(cube, axes=axes, workers=workers)
    half = spectrum[..., : tshape[-1] // 2 + 1]
    pw = np.ascontiguousarray(parseval_weights(tshape)).ravel()
    what = np.ascontiguousarray(half).ravel()
    g = 1.0 - what
    q = pw * what * what

    A = int(np.prod(cube.shape[: axes[0]]))
    C = int(np.prod(cube.shape[axes[-1] + 1 :]))
    F3 = np.ascontiguousarray(F).reshape(A, what.size, C)

    k = 0
    if n_iter is not None:
        for _ in range(int(n_iter)):
            _backend.sift_step(F3, g, q, pw)
        k = int(n_iter)
    else:
        while k < stop.max_inner:
            num, den = _backend.sift_step(F3, g, q, pw)
            if den == 0.0:  # running signal already annihilated
                break
            k += 1
            if np.sqrt(num / den) < stop.delta:
                break
    imf = sp_fft.irfftn(F3.reshape(F.shape), s=tshape, axes=axes, workers=workers)
    return imf, k

