"""Compare the numba and numpy permanent backends.

Two measurements:

* raw kernel throughput on random complex batches of n x n matrices, and
* an end-to-end four-photon fringe sweep, run in a subprocess per backend so
  the ``PHOTONDOF_DISABLE_NUMBA`` switch takes effect at import.

    python benchmarks/bench_permanents.py --sizes 2 3 4 5 6 --batch 20000
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from photondof import _kernels

SWEEP_SNIPPET = """
import json, time
from photondof import backend_name, build_pdc_four_photon, fringe_sweep
from photondof.fringe import uniform_grid
from photondof.optics import build_noon_projection_network
net, layout = build_noon_projection_network(4)
state = build_pdc_four_photon("uniform:{d}")
fringe_sweep(state, net, layout, grid=uniform_grid(16))  # warm-up / JIT
t0 = time.perf_counter()
res = fringe_sweep(state, net, layout, grid=uniform_grid({points}))
print(json.dumps({{"backend": backend_name(), "seconds": time.perf_counter() - t0, "V": res.visibility}}))
"""


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_table(sizes, batch, repeats, seed):
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        mats = rng.normal(size=(batch, n, n)) + 1j * rng.normal(size=(batch, n, n))
        t_np = best_of(lambda: _kernels.batch_permanents_numpy(mats), repeats)
        if _kernels.HAVE_NUMBA:
            _kernels.batch_permanents_numba(mats[:2])  # compile outside the timing
            t_nb = best_of(lambda: _kernels.batch_permanents_numba(mats), repeats)
            err = float(np.max(np.abs(_kernels.batch_permanents_numba(mats) - _kernels.batch_permanents_numpy(mats))))
        else:
            t_nb, err = float("nan"), float("nan")
        rows.append((n, t_np, t_nb, err))
    return rows


def sweep_timing(d, points):
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, PHOTONDOF_DISABLE_NUMBA=flag)
        proc = subprocess.run(
            [sys.executable, "-c", SWEEP_SNIPPET.format(d=d, points=points)],
            env=env, capture_output=True, text=True, check=True,
        )
        doc = json.loads(proc.stdout)
        out[doc["backend"]] = doc
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--batch", type=int, default=20000)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sweep-d", type=int, default=4, help="frequency count for the fringe sweep")
    ap.add_argument("--points", type=int, default=64)
    ap.add_argument("--skip-sweep", action="store_true")
    args = ap.parse_args(argv)

    print(f"kernel throughput, batch={args.batch}, best of {args.repeats}")
    print(f"{'n':>3} {'numpy s':>10} {'numba s':>10} {'speed-up':>9} {'max |diff|':>11}")
    for n, t_np, t_nb, err in kernel_table(args.sizes, args.batch, args.repeats, args.seed):
        print(f"{n:>3} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>9.2f} {err:>11.2e}")

    if not args.skip_sweep:
        print(f"\nfour-photon sweep, uniform:{args.sweep_d}, {args.points} points")
        for name, doc in sorted(sweep_timing(args.sweep_d, args.points).items()):
            print(f"  {name:>6}: {doc['seconds']:.3f}s  V={doc['V']:.12f}")


if __name__ == "__main__":
    main()
