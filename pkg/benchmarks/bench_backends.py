"""Compare the numba and pure-numpy backends on the hot loops.

Each backend runs in its own interpreter because the choice is made at import
time.  Usage: python benchmarks/bench_backends.py [--sizes 64,128,256] [--nt 64]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from mdmvfif import _backend
from mdmvfif.oscillation import min_support_over_time
from mdmvfif.kernels import kernel_spectrum, make_kernel_nd
from mdmvfif.sift import StopConfig, sift_spectral

sizes, nt = json.loads(sys.argv[1]), int(sys.argv[2])
rng = np.random.default_rng(0)
stop = StopConfig(1e-3, 20, 1)
out = {"backend": _backend.BACKEND, "rows": []}

def best(fn, repeats=3):
    fn()
    t = []
    for _ in range(repeats):
        t0 = time.perf_counter(); fn(); t.append(time.perf_counter() - t0)
    return min(t)

for n in sizes:
    cube = rng.standard_normal((n, n, nt))
    resp = kernel_spectrum(make_kernel_nd((4, 4)), (n, n))
    out["rows"].append({
        "size": n,
        "extrema": best(lambda: min_support_over_time(cube, 1.6)),
        "sift": best(lambda: sift_spectral(cube, resp, stop, axes=(0, 1), n_iter=20)),
    })
print(json.dumps(out))
"""


def run(backend, sizes, nt):
    env = dict(os.environ)
    env["MDMVFIF_PURE_NUMPY"] = "1" if backend == "numpy" else "0"
    r = subprocess.run([sys.executable, "-c", WORKER, json.dumps(sizes), str(nt)],
                       env=env, capture_output=True, text=True, check=True)
    return json.loads(r.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,128,256")
    ap.add_argument("--nt", type=int, default=64)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    results = {b: run(b, sizes, args.nt) for b in ("numba", "numpy")}
    if results["numba"]["backend"] != "numba":
        print("numba is not installed; only the numpy path was measured", file=sys.stderr)
    print(f"{'size':>6} {'step':>8} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for a, b in zip(results["numba"]["rows"], results["numpy"]["rows"]):
        for step in ("extrema", "sift"):
            print(f"{a['size']:>6} {step:>8} {a[step]:>10.4f} {b[step]:>10.4f} {b[step] / a[step]:>8.2f}")


if __name__ == "__main__":
    main()
