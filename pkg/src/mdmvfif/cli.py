"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data or format error.  All
diagnostics go to standard error; default parameter values live here only.
"""

import argparse
import logging
import sys
from pathlib import Path

from . import bench, dataio, signalgen
from .core import decompose, st_fif
from .errors import DataError, GridTooSmall
from .oscillation import axis_extrema_counts, local_extrema, min_support_over_time
from .sift import StopConfig
from .temporal import rotation_angles

DEFAULT_XI = 1.6
DEFAULT_DELTA = 1e-3
DEFAULT_MAX_INNER = 200
DEFAULT_MAX_IMFS = 9
DEFAULT_EXTEND = "none"
SEPARABLE_FX = 8
SEPARABLE_FT = 16

log = logging.getLogger("mdmvfif")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text, n=None):
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated integers, got {text!r}")
    return vals


def _add_decomp_flags(p):
    p.add_argument("--in", dest="inp", required=True, help="input cube file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--xi", type=float, default=DEFAULT_XI)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--max-inner", type=int, default=DEFAULT_MAX_INNER)
    p.add_argument("--max-imfs", type=int, default=DEFAULT_MAX_IMFS)
    p.add_argument("--extend", choices=("none", "reflect"), default=DEFAULT_EXTEND)
    p.add_argument("--threads", type=int, default=1, help="FFT worker count")


def build_parser():
    parser = _Parser(prog="mdmvfif", description="Multidimensional multivariate fast iterative filtering.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a synthetic cube")
    p.add_argument("--preset", choices=("example1", "example2", "separable"), required=True)
    p.add_argument("--dims", type=lambda s: _int_list(s, 3), required=True, help="NX,NY,NT")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("decompose", help="alternating space/time decomposition")
    _add_decomp_flags(p)
    p = sub.add_parser("stfif", help="joint space-time decomposition")
    _add_decomp_flags(p)

    p = sub.add_parser("import", help="stack CSV grids listed in a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("export-plot", help="CSV of a slice or a point series")
    p.add_argument("--in", dest="inp", required=True, help="cube file or export directory")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--slice", type=int, metavar="T")
    g.add_argument("--series", type=_int_list, metavar="V1,V2")
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="runtime table over square grid sizes (T=64)")
    p.add_argument("--sizes", type=_int_list, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("info", help="summarize a cube")
    p.add_argument("--in", dest="inp", required=True)
    return parser


def _stop(args):
    try:
        return StopConfig(args.delta, args.max_inner, args.max_imfs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(path):
    path = Path(path)
    if path.is_dir():  # an export directory: sum its components
        return sum(dataio.read_export(path).values())
    return dataio.read_cube(path)


def cmd_generate(args):
    nx, ny, nt = args.dims
    if min(nx, ny, nt) < 3:
        raise GridTooSmall(f"every extent must be >= 3, got {tuple(args.dims)}")
    if args.preset == "example1":
        cube, _ = signalgen.gen_example1(nx, ny, nt, args.seed)
    elif args.preset == "example2":
        cube, _ = signalgen.gen_example2(nx, ny, nt, args.seed)
    else:
        cube, _ = signalgen.gen_separable(nx, ny, nt, SEPARABLE_FX, SEPARABLE_FT)
    dataio.write_cube(cube, args.out)


def cmd_decompose(args):
    if args.xi <= 0:
        raise UsageError("--xi must be positive")
    cube = dataio.read_cube(args.inp)
    res = decompose(cube, args.xi, _stop(args), extend=args.extend, workers=args.threads)
    for w in res.warnings:
        log.warning(w)
    dataio.export_result(res, args.out)
    log.info("%d spatial and %d temporal IMFs", len(res.spatial_imfs), len(res.temporal_imfs))


def cmd_stfif(args):
    if args.xi <= 0:
        raise UsageError("--xi must be positive")
    cube = dataio.read_cube(args.inp)
    imfs, records = st_fif(cube, args.xi, _stop(args), extend=args.extend, workers=args.threads,
                           return_diagnostics=True)
    dataio.export_imf_list(imfs, args.out, records)
    log.info("%d joint IMFs", len(imfs) - 1)


def cmd_import(args):
    dataio.write_cube(dataio.import_csv_stack(args.manifest), args.out)


def cmd_export_plot(args):
    cube = _load(args.inp)
    sel = ("slice", args.slice) if args.slice is not None else ("series", *args.series)
    Path(args.out).write_text(dataio.export_plotdata(cube, sel), encoding="utf-8")


def cmd_bench(args):
    if any(n < 3 for n in args.sizes):
        raise GridTooSmall("bench sizes must be >= 3")
    rows = bench.time_sizes(args.sizes)
    Path(args.out).write_text(bench.format_table(rows), encoding="utf-8")
    if len(rows) >= 2:
        log.info("log-log slope: %.3f", bench.loglog_slope(rows))


def cmd_info(args):
    cube = dataio.read_cube(args.inp)
    out = [f"dims: {'x'.join(map(str, cube.shape))}",
           f"range: [{cube.min():.6g}, {cube.max():.6g}]"]
    if cube.ndim >= 2 and min(cube.shape[:-1]) >= 3:
        n = cube.ndim - 1
        for a in range(n):
            c = axis_extrema_counts(cube, a, n)
            out.append(f"axis {a} extrema per slice: min {c.min()} mean {c.mean():.1f} max {c.max()}")
        out.append(f"support (xi={DEFAULT_XI}): {min_support_over_time(cube, DEFAULT_XI).half_lengths}")
    if cube.shape[-1] >= 2:
        try:
            th = rotation_angles(cube)
        except DataError as exc:
            out.append(f"rotation angles: unavailable ({exc})")
        else:
            line = f"rotation angles: min {th.min():.6g} mean {th.mean():.6g} max {th.max():.6g}"
            if th.size >= 3:
                line += f", {local_extrema(th).count} extrema"
            out.append(line)
    print("\n".join(out))


COMMANDS = {
    "generate": cmd_generate,
    "decompose": cmd_decompose,
    "stfif": cmd_stfif,
    "import": cmd_import,
    "export-plot": cmd_export_plot,
    "bench": cmd_bench,
    "info": cmd_info,
}


def run(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (DataError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
