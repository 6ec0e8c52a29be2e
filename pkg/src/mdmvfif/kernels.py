"""Compactly supported smoothing kernels and their discrete transfer functions."""

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidFilterLength, KernelTooLarge


def mollifier(u):
    """Smooth bump ``exp(1/(u^2-1))`` on ``|u| < 1``, zero elsewhere."""
    u = np.abs(np.asarray(u, dtype=np.float64))
    out = np.zeros_like(u)
    inside = u < 1.0
    out[inside] = np.exp(1.0 / (u[inside] ** 2 - 1.0))
    return out


@dataclass(frozen=True, eq=False)
class Kernel1D:
    half_length: int
    weights: np.ndarray

    @property
    def ndim(self):
        return 1

    @property
    def half_lengths(self):
        return (self.half_length,)


@dataclass(frozen=True, eq=False)
class KernelND:
    half_lengths: tuple
    weights: np.ndarray

    @property
    def ndim(self):
        return len(self.half_lengths)


Kernel = Union[Kernel1D, KernelND]


@dataclass(frozen=True)
class SupportSpec:
    """Per-axis half-support lengths (in samples) of a spatial kernel."""

    half_lengths: tuple

    def __post_init__(self):
        hl = tuple(int(h) for h in self.half_lengths)
        if not hl or min(hl) < 1:
            raise InvalidFilterLength(f"half lengths must all be >= 1, got {hl}")
        object.__setattr__(self, "half_lengths", hl)

    def __len__(self):
        return len(self.half_lengths)

    def __iter__(self):
        return iter(self.half_lengths)

    def minimum(self, other):
        return SupportSpec(tuple(min(a, b) for a, b in zip(self, other)))


def _frozen(a):
    a.setflags(write=False)
    return a


def make_kernel_1d(half_length, profile=mollifier):
    """Sample ``profile`` at ``j/(L+1)``, ``j = -L..L``, normalized to unit sum."""
    if int(half_length) != half_length or half_length < 1:
        raise InvalidFilterLength(f"half_length must be a positive integer, got {half_length}")
    L = int(half_length)
    u = np.arange(-L, L + 1) / (L + 1)
    w = profile(u)
    w = w / w.sum()
    return Kernel1D(L, _frozen(w))


def make_kernel_nd(support, profile=mollifier):
    """Ellipsoidal kernel: profile of the axis-normalized radius ``|j_a/(L_a+1)|``."""
    if not isinstance(support, SupportSpec):
        support = SupportSpec(tuple(support))
    axes = [np.arange(-L, L + 1) / (L + 1) for L in support]
    grids = np.meshgrid(*axes, indexing="ij", sparse=True)
    r = np.sqrt(sum(g * g for g in grids))
    w = profile(r)
    w = w / w.sum()
    return KernelND(support.half_lengths, _frozen(w))


def product_kernel(*kernels):
    """Tensor product of kernels over disjoint axes, renormalized to unit mass."""
    w = np.ones(())
    half = ()
    for k in kernels:
        w = np.multiply.outer(w, k.weights)
        half += tuple(k.half_lengths)
    return KernelND(half, _frozen(w / w.sum()))


def embed_kernel(kernel, grid_shape):
    """Zero-pad ``kernel`` onto ``grid_shape`` with its center at index 0 (circularly)."""
    grid_shape = tuple(int(n) for n in grid_shape)
    w = np.asarray(kernel.weights)
    if w.ndim != len(grid_shape):
        raise ValueError(f"kernel has {w.ndim} axes, grid has {len(grid_shape)}")
    if any(e > n for e, n in zip(w.shape, grid_shape)):
        raise KernelTooLarge(f"kernel extent {w.shape} exceeds grid {grid_shape}")
    g = np.zeros(grid_shape)
    g[tuple(slice(0, e) for e in w.shape)] = w
    return np.roll(g, [-(e // 2) for e in w.shape], axis=tuple(range(w.ndim)))


def kernel_spectrum(kernel, grid_shape, clamp=True):
    """Real DFT of the circularly centered kernel on ``grid_shape``.

    The imaginary part vanishes up to roundoff because the kernel is even.
    With ``clamp`` the values are clipped into [0, 1].
    """
    g = embed_kernel(kernel, grid_shape)
    s = np.fft.fftn(g).real
    if clamp:
        np.clip(s, 0.0, 1.0, out=s)
    return s


def count_out_of_range(raw, tol=1e-12):
    """Number of transfer values that clamping moves by more than ``tol``."""
    return int(np.count_nonzero((raw < -tol) | (raw > 1.0 + tol)))
