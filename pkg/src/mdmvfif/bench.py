"""Runtime scaling of one decomposition round on square grids."""

import time

import numpy as np

from .oscillation import min_support_over_time
from .sift import StopConfig
from .spatial import extract_spatial_imf
from .temporal import extract_temporal_imf, rotation_angles


def one_round(cube, xi=1.6, n_iter=10, workers=None):
    """Support estimation, rotation angles and one forced-length sift per stage."""
    stop = StopConfig(1e-3, n_iter, 1)
    support = min_support_over_time(cube, xi)
    imf, _ = extract_spatial_imf(cube, support, stop, n_iter=n_iter, workers=workers)
    f = cube - imf
    rotation_angles(f)
    L = max(1, min(f.shape[-1] // 8, (f.shape[-1] - 1) // 2))
    imf_t, _ = extract_temporal_imf(f, L, stop, n_iter=n_iter, workers=workers)
    return f - imf_t


def time_sizes(sizes, nt=64, repeats=3, n_iter=10, seed=0, workers=None):
    """Best-of-``repeats`` wall time of ``one_round`` for every ``size x size x nt`` cube.

    Returns a list of ``(size, samples, seconds)``.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        cube = rng.standard_normal((n, n, nt))
        one_round(cube, n_iter=1, workers=workers)  # warm-up (jit, fft plans)
        best = np.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            one_round(cube, n_iter=n_iter, workers=workers)
            best = min(best, time.perf_counter() - t0)
        rows.append((int(n), int(cube.size), best))
    return rows


def loglog_slope(rows):
    """Least-squares slope of log(seconds) against log(samples)."""
    x = np.log([r[1] for r in rows])
    y = np.log([r[2] for r in rows])
    return float(np.polyfit(x, y, 1)[0])


def format_table(rows):
    out = ["size\tsamples\tseconds"]
    out += [f"{n}\t{m}\t{s:.6f}" for n, m, s in rows]
    return "\n".join(out) + "\n"
