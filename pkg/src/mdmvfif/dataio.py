"""Binary cube container, CSV stack import and plot-data export.

Container layout (all little-endian)::

    b"MDMV" | u32 version = 1 | u8 ndims | u64 extent * ndims | f64 values (row-major)
"""

import csv
import io
import struct
from pathlib import Path

import numpy as np

from .errors import FormatError, IndexOutOfRange, ParseError, ShapeMismatch

MAGIC = b"MDMV"
VERSION = 1
_PREFIX = struct.Struct("<4sIB")


def header_size(ndims):
    return _PREFIX.size + 8 * ndims


def encode_cube(cube):
    cube = np.asarray(cube, dtype=np.float64)
    head = _PREFIX.pack(MAGIC, VERSION, cube.ndim) + struct.pack(f"<{cube.ndim}Q", *cube.shape)
    return head + np.ascontiguousarray(cube, dtype="<f8").tobytes()


def decode_cube(buf):
    if len(buf) < _PREFIX.size:
        raise FormatError(f"file too short for header: {len(buf)} bytes, need {_PREFIX.size}", len(buf))
    magic, version, ndims = _PREFIX.unpack_from(buf, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}", 0)
    if version != VERSION:
        raise FormatError(f"unsupported version {version}", 4)
    if ndims == 0:
        raise FormatError("zero dimensions", 8)
    hs = header_size(ndims)
    if len(buf) < hs:
        raise FormatError(f"truncated header: {len(buf)} bytes, need {hs}", len(buf))
    shape = struct.unpack_from(f"<{ndims}Q", buf, _PREFIX.size)
    expected = hs + 8 * int(np.prod(shape, dtype=np.int64))
    if len(buf) != expected:
        what = "truncated" if len(buf) < expected else "trailing bytes in"
        raise FormatError(f"{what} file: {len(buf)} bytes, expected {expected}", min(len(buf), expected))
    return np.frombuffer(buf, dtype="<f8", offset=hs).reshape(shape).astype(np.float64)


def write_cube(cube, path):
    Path(path).write_bytes(encode_cube(cube))


def read_cube(path):
    return decode_cube(Path(path).read_bytes())


def _read_grid(path):
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for r, line in enumerate(csv.reader(fh)):
            if not line:
                continue
            vals = []
            for c, cell in enumerate(line):
                try:
                    v = float(cell)
                except ValueError:
                    raise ParseError(path, r, c, f"not a number: {cell!r}") from None
                if not np.isfinite(v):
                    raise ParseError(path, r, c, f"non-finite value {cell.strip()}")
                vals.append(v)
            if rows and len(vals) != len(rows[0]):
                raise ParseError(path, r, len(vals), f"row has {len(vals)} cells, expected {len(rows[0])}")
            rows.append(vals)
    if not rows:
        raise ParseError(path, 0, 0, "empty grid")
    return np.array(rows, dtype=np.float64)


def import_csv_stack(manifest_path):
    """Stack the CSV grids listed in a manifest (one path per line) along a trailing time axis.

    Relative paths are resolved against the manifest's directory.
    """
    manifest_path = Path(manifest_path)
    base = manifest_path.parent
    paths = [ln.strip() for ln in manifest_path.read_text(encoding="utf-8").splitlines() if ln.strip()]
    if not paths:
        raise FormatError(f"{manifest_path}: manifest lists no files")
    grids = []
    for t, p in enumerate(paths):
        p = Path(p)
        if not p.is_absolute():
            p = base / p
        g = _read_grid(p)
        if grids and g.shape != grids[0].shape:
            raise ShapeMismatch(t, grids[0].shape, g.shape)
        grids.append(g)
    return np.stack(grids, axis=-1)


def export_result(result, out_dir):
    """Write every IMF and the residual as cube files plus a text manifest; returns the manifest path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    diag = {"space": [], "time": []}
    for rec in result.diagnostics:
        diag.setdefault(rec.stage, []).append(rec)

    lines = ["# file\tstage\tsize\titerations\tclamped_bins"]

    def put(name, arr, rec):
        write_cube(arr, out_dir / name)
        size = "x".join(str(s) for s in rec.size)
        lines.append(f"{name}\t{rec.stage}\t{size}\t{rec.iterations}\t{rec.clamped_bins}")

    residual_line = "residual.mdmv\tresidual\t-\t-\t-"
    for i, imf in enumerate(result.spatial_imfs):
        put(f"imf_s_{i + 1:02d}.mdmv", imf, diag["space"][i])
    lines.append(residual_line)  # closes the spatial group
    for i, imf in enumerate(result.temporal_imfs):
        put(f"imf_t_{i + 1:02d}.mdmv", imf, diag["time"][i])
    write_cube(result.residual, out_dir / "residual.mdmv")
    if result.temporal_imfs:
        lines.append(residual_line)
    for w in result.warnings:
        lines.append(f"# warning: {w}")
    manifest = out_dir / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


def read_export(out_dir):
    """Load the cubes listed in an export manifest, each file once, in manifest order."""
    out_dir = Path(out_dir)
    seen, cubes = set(), {}
    for line in (out_dir / "manifest.txt").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        name = line.split("\t", 1)[0]
        if name not in seen:
            seen.add(name)
            cubes[name] = read_cube(out_dir / name)
    return cubes


def export_plotdata(data, selector):
    """CSV text for a slice ``("slice", t)`` or a series ``("series", v1, v2)``.

    ``data`` is a cube or anything with a ``reconstruct()`` method.
    """
    cube = data.reconstruct() if hasattr(data, "reconstruct") else np.asarray(data, dtype=np.float64)
    kind, *idx = selector
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if kind == "slice":
        (t,) = idx
        if not 0 <= t < cube.shape[-1]:
            raise IndexOutOfRange(f"time index {t} outside [0, {cube.shape[-1]})")
        grid = cube[..., t]
        if grid.ndim == 1:
            grid = grid[:, None]
        for row in grid.reshape(grid.shape[0], -1):
            w.writerow([repr(float(v)) for v in row])
    elif kind == "series":
        if len(idx) != cube.ndim - 1:
            raise IndexOutOfRange(f"need {cube.ndim - 1} spatial indices, got {len(idx)}")
        for a, (i, n) in enumerate(zip(idx, cube.shape)):
            if not 0 <= i < n:
                raise IndexOutOfRange(f"index {i} outside [0, {n}) on axis {a}")
        for t, v in enumerate(cube[tuple(idx)]):
            w.writerow([t, repr(float(v))])
    else:
        raise ValueError(f"unknown selector {kind!r}")
    return buf.getvalue()


def file_size(shape):
    return header_size(len(shape)) + 8 * int(np.prod(shape, dtype=np.int64))


__all__ = [
    "MAGIC",
    "VERSION",
    "decode_cube",
    "encode_cube",
    "export_plotdata",
    "export_imf_list",
    "export_result",
    "file_size",
    "header_size",
    "import_csv_stack",
    "read_cube",
    "read_export",
    "write_cube",
]


def export_imf_list(imfs, out_dir, records=()):
    """Write a joint-variant IMF list (residual last) as imf_01..., residual plus a manifest."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = list(records)
    lines = ["# file\tstage\tsize\titerations\tclamped_bins"]
    for i, imf in enumerate(imfs[:-1]):
        name = f"imf_{i + 1:02d}.mdmv"
        write_cube(imf, out_dir / name)
        if i < len(records):
            rec = records[i]
            size = "x".join(str(s) for s in rec.size)
            lines.append(f"{name}\t{rec.stage}\t{size}\t{rec.iterations}\t{rec.clamped_bins}")
        else:
            lines.append(f"{name}\t-\t-\t-\t-")
    write_cube(imfs[-1], out_dir / "residual.mdmv")
    lines.append("residual.mdmv\tresidual\t-\t-\t-")
    manifest = out_dir / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest
