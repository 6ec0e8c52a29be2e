"""Inner loops with two interchangeable implementations.

The numba path compiles the loops below with ``@njit``; the numpy path is
vectorized and always available.  Export ``MDMVFIF_PURE_NUMPY=1`` before
importing the package to force the numpy path (numba is also skipped when it
is not installed).  Integer results (extrema) are identical on both paths;
floating reductions may differ in the last bits because summation order is
not the same.
"""

import os

import numpy as np

PURE_NUMPY = os.environ.get("MDMVFIF_PURE_NUMPY", "").strip() not in ("", "0")

try:
    if PURE_NUMPY:
        raise ImportError("numba disabled by MDMVFIF_PURE_NUMPY")
    from numba import njit
except ImportError:
    njit = None

HAVE_NUMBA = njit is not None
BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _signed_steps(lines):
    """Sign of each step, and the sign of the last nonzero step so far."""
    d = np.sign(np.diff(lines, axis=-1)).astype(np.int8)
    n = d.shape[-1]
    idx = np.where(d != 0, np.arange(n), 0)
    np.maximum.accumulate(idx, axis=-1, out=idx)
    filled = np.take_along_axis(d, idx, axis=-1)
    return d, idx, filled


def _extrema_mask_np(lines):
    # A turning point sits between a nonzero step and the previous nonzero
    # step of opposite sign; equal-valued runs are skipped over.
    d, idx, filled = _signed_steps(lines)
    turn = np.zeros(d.shape, dtype=bool)
    turn[..., 1:] = (d[..., 1:] != 0) & (filled[..., :-1] != 0) & (d[..., 1:] != filled[..., :-1])
    return turn, idx


def extrema_counts_np(lines):
    lines = np.ascontiguousarray(lines, dtype=np.float64)
    if lines.shape[-1] < 3:
        return np.zeros(lines.shape[:-1], dtype=np.int64)
    turn, _ = _extrema_mask_np(lines)
    return turn.sum(axis=-1, dtype=np.int64)


def extrema_positions_np(series):
    series = np.asarray(series, dtype=np.float64)
    if series.size < 3:
        return np.zeros(0, dtype=np.int64)
    turn, idx = _extrema_mask_np(series)
    k = np.flatnonzero(turn)
    # left edge of the run: one past the previous nonzero step
    return (idx[k - 1] + 1).astype(np.int64)


def sift_step_np(F, g, q, pw):
    """One multiplication ``F *= g`` plus the two weighted norms before it.

    ``F`` has shape (A, B, C); ``g``, ``q`` and ``pw`` are length-B.  Returns
    ``(sum(q * |F|^2), sum(pw * |F|^2))`` evaluated on the incoming ``F``.
    """
    m = F.real * F.real + F.imag * F.imag
    m = m.sum(axis=(0, 2))
    num = float(np.dot(q, m))
    den = float(np.dot(pw, m))
    F *= g[None, :, None]
    return num, den


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _line_extrema(x, out):
        n = x.shape[0]
        count = 0
        if n < 3:
            return 0
        i = 0
        while i + 1 < n and x[i + 1] == x[i]:
            i += 1
        left = x[i]
        i += 1
        while i < n:
            s = i
            v = x[i]
            while i + 1 < n and x[i + 1] == v:
                i += 1
            if i + 1 < n:
                r = x[i + 1]
                if (v > left and v > r) or (v < left and v < r):
                    if out.shape[0] > 0:
                        out[count] = s
                    count += 1
            left = v
            i += 1
        return count

    @njit(cache=True)
    def _extrema_counts_nb(lines):
        m = lines.shape[0]
        counts = np.zeros(m, dtype=np.int64)
        dummy = np.zeros(0, dtype=np.int64)
        for j in range(m):
            counts[j] = _line_extrema(lines[j], dummy)
        return counts

    @njit(cache=True)
    def _extrema_positions_nb(series):
        out = np.zeros(series.shape[0], dtype=np.int64)
        c = _line_extrema(series, out)
        return out[:c].copy()

    @njit(cache=True)
    def _sift_step_nb(F, g, q, pw):
        A, B, C = F.shape
        num = 0.0
        den = 0.0
        for a in range(A):
            for b in range(B):
                gb = g[b]
                nb = 0.0
                for c in range(C):
                    z = F[a, b, c]
                    nb += z.real * z.real + z.imag * z.imag
                    F[a, b, c] = z * gb
                num += q[b] * nb
                den += pw[b] * nb
        return num, den

    def extrema_counts(lines):
        lines = np.asarray(lines, dtype=np.float64)
        shape = lines.shape[:-1]
        flat = np.ascontiguousarray(lines.reshape(-1, lines.shape[-1]))
        return _extrema_counts_nb(flat).reshape(shape)

    def extrema_positions(series):
        return _extrema_positions_nb(np.ascontiguousarray(series, dtype=np.float64))

    def sift_step(F, g, q, pw):
        return _sift_step_nb(F, g, q, pw)

else:
    extrema_counts = extrema_counts_np
    extrema_positions = extrema_positions_np
    sift_step = sift_step_np
