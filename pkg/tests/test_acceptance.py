"""End-to-end acceptance criteria, one test per criterion.

Each test records one PASS/FAIL line that pytest prints in an
"acceptance criteria" section at the end of the run.
"""

import math
import time

import numpy as np
from scipy.signal import convolve

from mdmvfif import bench
from mdmvfif.core import decompose, st_fif
from mdmvfif.dataio import import_csv_stack
from mdmvfif.kernels import kernel_spectrum, make_kernel_1d, make_kernel_nd
from mdmvfif.oscillation import min_support_over_time
from mdmvfif.sift import StopConfig, sift_spectral
from mdmvfif.signalgen import (
    gen_air_temperature_surrogate,
    gen_example1,
    gen_example2,
    gen_rotating,
    gen_separable,
)
from mdmvfif.temporal import rotation_angles

from conftest import corr, report

DEFAULTS = dict(xi=1.6, stop=StopConfig(1e-3, 200, 9))
# separation settings: wider spatial support and a looser inner-loop threshold
SEPARATION = dict(xi=2.4, stop=StopConfig(0.03, 200, 9))


def rel_max_err(x, y):
    return float(np.abs(x - y).max() / np.abs(x).max())


def test_criterion_1_reconstruction():
    cases = [("example1", gen_example1(128, 128, 256, seed=0)[0]), ("example2", gen_example2(128, 128, 256, seed=0)[0])]
    rng = np.random.default_rng(2024)
    cases += [(f"random{i}", rng.standard_normal((64, 64, 128))) for i in range(10)]
    worst, slowest = 0.0, 0.0
    for _, cube in cases:
        t0 = time.perf_counter()
        res = decompose(cube, **DEFAULTS)
        slowest = max(slowest, time.perf_counter() - t0)
        worst = max(worst, rel_max_err(cube, res.reconstruct()))
    report(1, worst <= 1e-9 and slowest <= 60,
           f"worst relative error {worst:.2e} (<= 1e-9), slowest cube {slowest:.1f} s (<= 60 s)")


def _explicit(f, taps, k, axes):
    """k steps of f <- f - f * w by direct circular convolution with the listed taps."""
    for _ in range(k):
        avg = np.zeros_like(f)
        for offset, weight in taps:
            avg += weight * np.roll(f, offset, axis=axes)
        f = f - avg
    return f


def _taps(grid):
    return [(tuple(int(i) for i in idx), grid[tuple(idx)]) for idx in np.argwhere(grid != 0)]


def _self_conv(w):
    """w * w: compact, even, nonnegative, unit mass, with transfer function in [0, 1]."""
    return convolve(w, w, method="direct")


def test_criterion_2_spectral_equals_convolution():
    rng = np.random.default_rng(7)
    stop = StopConfig(1e-3, 200, 1)
    worst = 0.0
    for shape, kern in [((16, 16), make_kernel_nd((3, 2))), ((64,), make_kernel_1d(5))]:
        axes = tuple(range(len(shape)))
        f = rng.standard_normal(shape)
        # mollifier: spectral iteration with the clamped transfer function equals
        # convolution with the kernel that transfer function belongs to
        resp = kernel_spectrum(kern, shape)
        eff = np.fft.ifftn(resp).real
        # nonnegative-transfer kernel: no clamping, compact taps
        ww = _self_conv(np.asarray(kern.weights))
        holder = type("K", (), {"weights": ww})()
        raw = kernel_spectrum(holder, shape, clamp=False)
        assert raw.min() >= -1e-12 and raw.max() <= 1 + 1e-12
        grid = np.fft.ifftn(np.clip(raw, 0, 1)).real
        grid[np.abs(grid) < 1e-15] = 0.0
        for k in (1, 2, 5, 10):
            a, _ = sift_spectral(f, resp, stop, axes=axes, n_iter=k)
            worst = max(worst, np.abs(a - _explicit(f, _taps(eff), k, axes)).max())
            b, _ = sift_spectral(f, np.clip(raw, 0, 1), stop, axes=axes, n_iter=k)
            worst = max(worst, np.abs(b - _explicit(f, _taps(grid), k, axes)).max())
    report(2, worst <= 1e-8, f"max abs difference {worst:.2e} over k in {{1,2,5,10}} (<= 1e-8)")


def _component_correlations(gen):
    cube, gt = gen(128, 128, 256, seed=0)
    res = decompose(cube, **SEPARATION)
    c = gt.components
    slices = (0, 64, 128, 192, 255)
    points = ((10, 10), (64, 64), (100, 30))
    out = {}
    for imf, name in zip(res.spatial_imfs[:2], ("c1", "c2")):
        out[name] = min(corr(imf[:, :, t], c[name][:, :, t]) for t in slices)
    for imf, name in zip(res.temporal_imfs[:2], ("c3", "c4")):
        out[name] = min(corr(imf[i, j], c[name][i, j]) for i, j in points)
    return out


def test_criterion_3_component_separation():
    results = {}
    for label, gen in (("example1", gen_example1), ("example2", gen_example2)):
        for name, r in _component_correlations(gen).items():
            results[f"{label}.{name}"] = r
    ok = len(results) == 8 and all(r >= 0.95 for r in results.values())
    detail = ", ".join(f"{k} {v:.3f}" for k, v in results.items())
    report(3, ok, f"min correlation per IMF (>= 0.95): {detail}")


def test_criterion_4_rotation_angles():
    th = rotation_angles(gen_rotating(500, 0.1))
    err = float(np.abs(th - 0.1).max())
    rng = np.random.default_rng(99)
    in_range = True
    for _ in range(1000):
        shape = tuple(rng.integers(1, 6, size=2)) + (int(rng.integers(2, 12)),)
        cube = rng.standard_normal(shape) * 10.0 ** rng.uniform(-8, 8)
        if rng.random() < 0.3:  # near-parallel and antiparallel neighbours
            cube[..., 1] = cube[..., 0] * rng.choice([1.0, -1.0]) * (1 + 1e-15)
        a = rotation_angles(cube)
        in_range &= bool(np.all((a >= 0) & (a <= math.pi)))
    report(4, err <= 1e-12 and in_range, f"max |angle - 0.1| = {err:.1e} (<= 1e-12); 1000 random cubes in [0, pi]: {in_range}")


def _line_extrema(v):
    count, i, n = 0, 1, len(v)
    while i < n - 1:
        j = i
        while j + 1 < n and v[j + 1] == v[i]:
            j += 1
        if j == n - 1:
            break
        if (v[i - 1] < v[i] > v[j + 1]) or (v[i - 1] > v[i] < v[j + 1]):
            count += 1
        i = j + 1
    return count


def _oracle_support(slice_, xi):
    nx, ny = slice_.shape
    out = []
    for axis, extent in ((0, nx), (1, ny)):
        lines = slice_.T if axis == 0 else slice_
        total = sum(_line_extrema(list(line)) for line in lines)
        cap = max(1, extent // 2 - 1)
        out.append(cap if total == 0 else min(cap, max(1, math.floor(xi * nx * ny / total + 0.5))))
    return tuple(out)


def test_criterion_5_support_minimality():
    nx, ny, nt = 64, 48, 12
    x = np.arange(nx)[:, None] / nx
    y = np.arange(ny)[None, :] / ny
    cube = np.empty((nx, ny, nt))
    for t in range(nt):
        cube[:, :, t] = np.sin(2 * np.pi * (4 * x + 3 * y) + 0.2 * t)
    cube[:, :, 7] = np.sin(2 * np.pi * (8 * x + 6 * y) + 1.4)  # injected double-frequency slice
    xi = 1.6
    per = [_oracle_support(cube[:, :, t], xi) for t in range(nt)]
    expected = tuple(min(p[a] for p in per) for a in range(2))
    got = min_support_over_time(cube, xi).half_lengths
    ok = got == expected and got == per[7] and per[7] != per[0]
    report(5, ok, f"min support {got}, per-slice oracle minimum {expected}, injected slice {per[7]}, others {per[0]}")


def test_criterion_6_scaling():
    t0 = time.perf_counter()
    rows = bench.time_sizes([32, 64, 128, 256], nt=64)
    total = time.perf_counter() - t0
    slope = bench.loglog_slope(rows)
    table = "; ".join(f"{n}: {s * 1e3:.1f} ms" for n, _, s in rows)
    report(6, 0.9 <= slope <= 1.35 and total <= 300, f"log-log slope {slope:.3f} in [0.9, 1.35], total {total:.1f} s ({table})")


def test_criterion_7_real_data_pipeline(tmp_path):
    data = gen_air_temperature_surrogate(48, 97, 365, seed=0)
    names = []
    for t in range(365):
        p = tmp_path / f"t2m_{t:03d}.csv"
        np.savetxt(p, data[:, :, t], delimiter=",", fmt="%.17g")
        names.append(p.name)
    (tmp_path / "manifest.txt").write_text("\n".join(names) + "\n")
    cube = import_csv_stack(tmp_path / "manifest.txt")
    same = bool(np.array_equal(cube, data))
    res = decompose(cube, **DEFAULTS)
    ok = cube.shape == (48, 97, 365) and same and len(res.spatial_imfs) >= 2 and res.residual is not None
    report(7, ok, f"imported {cube.shape} (exact: {same}); {len(res.spatial_imfs)} spatial IMFs, "
                  f"{len(res.temporal_imfs)} temporal IMFs plus trend")


def test_criterion_8_st_fif():
    worst_corr, worst_err = 1.0, 0.0
    for dims, fx, ft in [((64, 64, 128), 8, 16), ((128, 128, 256), 8, 16), ((64, 48, 128), 3, 5), ((96, 64, 200), 12, 30)]:
        cube, gt = gen_separable(*dims, fx, ft)
        imfs = st_fif(cube, **DEFAULTS)
        worst_corr = min(worst_corr, corr(imfs[0], gt.components["product"]))
        worst_err = max(worst_err, rel_max_err(cube, sum(imfs)))
    report(8, worst_corr >= 0.95 and worst_err <= 1e-9,
           f"min first-IMF correlation {worst_corr:.4f} (>= 0.95), reconstruction {worst_err:.1e} (<= 1e-9)")
