"""Deterministic synthetic space-time cubes with known components.

Spatial components are frequency-modulated plane waves along the grid
diagonal whose local frequency sweeps between ``f0`` and ``2 f0``; they are
periodic on the grid so circular filtering sees no seam.  Temporal components
are identical at every grid point.
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from .errors import BadFrequency, GridTooSmall


@dataclass(frozen=True)
class GroundTruth:
    components: Dict[str, np.ndarray]

    def total(self):
        return sum(self.components.values())


def fm_phase(u, f0):
    """Phase (in cycles) whose derivative sweeps between ``f0`` and ``2 f0`` over a unit period."""
    return f0 * (1.5 * u - 0.5 * np.sin(2 * np.pi * u) / (2 * np.pi))


def _even(x):
    return 2 * max(1, int(round(x / 2)))


def _check(nx, ny, nt):
    if nx < 64 or ny < 64 or nt < 128:
        raise GridTooSmall(f"generators need nx, ny >= 64 and nt >= 128, got {(nx, ny, nt)}")


def _spatial_part(nx, ny, nt, rng):
    x = np.arange(nx)[:, None] / nx
    y = np.arange(ny)[None, :] / ny
    f_hi = _even(min(nx, ny) / 16)
    f_lo = f_hi / 4
    if (1.5 * f_lo) % 1:  # keep the pattern periodic
        f_lo = _even(f_lo)
        f_hi = 4 * f_lo
    p1, p2 = rng.uniform(0, 2 * np.pi, 2)
    c1 = np.sin(2 * np.pi * fm_phase(x + y, f_hi) + p1)
    c2 = np.sin(2 * np.pi * fm_phase(x + y, f_lo) + p2)
    a, b = rng.uniform(0.3, 0.6, 2)
    trend = a * (x - 0.5) ** 2 + b * y
    cube = lambda s: np.repeat(s[:, :, None], nt, axis=2)
    return {"c1": cube(c1), "c2": cube(c2)}, cube(trend)


def _temporal(values, nx, ny):
    return np.broadcast_to(values, (nx, ny, values.size)).copy()


def gen_example1(nx, ny, nt, seed=0):
    """Two spatial FM waves (frequency ratio 4), two temporal tones (ratio 5) and a trend."""
    _check(nx, ny, nt)
    rng = np.random.default_rng(seed)
    comps, trend = _spatial_part(nx, ny, nt, rng)
    t = np.arange(nt) / nt
    k3 = max(10, int(round(nt / 12.8)))
    k4 = max(2, int(round(k3 / 5)))
    p3, p4 = rng.uniform(0, 2 * np.pi, 2)
    comps["c3"] = _temporal(np.sin(2 * np.pi * k3 * t + p3), nx, ny)
    comps["c4"] = _temporal(np.sin(2 * np.pi * k4 * t + p4), nx, ny)
    comps["trend"] = trend
    gt = GroundTruth(comps)
    return gt.total(), gt


def gen_example2(nx, ny, nt, seed=0):
    """As ``gen_example1`` but the temporal components are FM chirps (sweep 2, ratio 4)."""
    _check(nx, ny, nt)
    rng = np.random.default_rng(seed)
    comps, trend = _spatial_part(nx, ny, nt, rng)
    t = np.arange(nt) / nt
    k3 = _even(nt / 16)
    k4 = k3 / 4
    if (1.5 * k4) % 1:
        k4 = _even(k4)
        k3 = 4 * k4
    p3, p4 = rng.uniform(0, 2 * np.pi, 2)
    comps["c3"] = _temporal(np.sin(2 * np.pi * fm_phase(t, k3) + p3), nx, ny)
    comps["c4"] = _temporal(np.sin(2 * np.pi * fm_phase(t, k4) + p4), nx, ny)
    comps["trend"] = trend
    gt = GroundTruth(comps)
    return gt.total(), gt


def gen_separable(nx, ny, nt, fx, ft):
    """Single product mode ``sin(2 pi fx x/nx) sin(2 pi ft t/nt)``, constant along y."""
    if not 1 <= fx < nx / 4:
        raise BadFrequency(f"fx must satisfy 1 <= fx < nx/4, got {fx}")
    if not 1 <= ft < nt / 4:
        raise BadFrequency(f"ft must satisfy 1 <= ft < nt/4, got {ft}")
    x = np.arange(nx)[:, None, None]
    t = np.arange(nt)[None, None, :]
    s = np.sin(2 * np.pi * fx * x / nx) * np.sin(2 * np.pi * ft * t / nt) * np.ones((1, ny, 1))
    gt = GroundTruth({"product": s})
    return s.copy(), gt


def gen_rotating(n_steps, step=0.1):
    """Two-point grid whose state rotates by ``step`` radians per time step."""
    t = np.arange(n_steps)
    return np.stack([np.cos(step * t), np.sin(step * t)])


def gen_air_temperature_surrogate(nlat=48, nlon=97, ndays=365, seed=0):
    """Kelvin-scale stand-in for a daily 2 m air-temperature grid.

    Latitudinal gradient, seasonal cycle growing with latitude, a slow
    longitudinal wave and Gaussian weather noise.
    """
    rng = np.random.default_rng(seed)
    lat = np.linspace(75.0, 15.0, nlat)[:, None, None]
    lon = np.linspace(0.0, 2 * np.pi, nlon, endpoint=False)[None, :, None]
    day = np.arange(ndays)[None, None, :]
    mean = 300.0 - 0.6 * (lat - 15.0)
    season = -(5.0 + 0.25 * (lat - 15.0)) * np.cos(2 * np.pi * (day + 10) / 365.0)
    wave = 3.0 * np.sin(3 * lon + 2 * np.pi * day / 30.0)
    noise = rng.normal(0.0, 2.0, (nlat, nlon, ndays))
    return mean + season + wave + noise
