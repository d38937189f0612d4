"""Compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--json out.json]

Each case runs both backends on the same input, checks the outputs agree and
reports the best wall time of ``--repeat`` runs.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from ising_lab import kernels
from ising_lab.blockpaths import walk_gf
from ising_lab.generators import complete, cube, petersen, random_regular
from ising_lab.partition import z_even_poly, z_ising_poly


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


CASES = [
    ("ising  cube (n=8)", lambda fp: z_ising_poly(cube(), force_python=fp).coeffs),
    ("ising  petersen (n=10)", lambda fp: z_ising_poly(petersen(), force_python=fp).coeffs),
    ("ising  3-regular n=16", lambda fp: z_ising_poly(random_regular(3, 16, 1), force_python=fp).coeffs),
    ("even   K6 (dim 10)", lambda fp: z_even_poly(complete(6), force_python=fp).coeffs),
    ("even   3-regular n=30 (dim 16)", lambda fp: z_even_poly(random_regular(3, 30, 2), force_python=fp).coeffs),
    ("trails petersen", lambda fp: walk_gf(petersen(), 0, force_python=fp).counts),
    ("trails K6", lambda fp: walk_gf(complete(6), 0, force_python=fp).counts),
]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", help="also write results here")
    args = parser.parse_args(argv)

    print(f"active backend: {kernels.BACKEND}")
    if kernels.BACKEND != "cython":
        print("compiled extension not available; only the fallback can be timed")
    rows = []
    for name, fn in CASES:
        t_py, out_py = _best(lambda: fn(True), args.repeat)
        row = {"case": name, "python_s": t_py}
        if kernels.BACKEND == "cython":
            t_c, out_c = _best(lambda: fn(False), args.repeat)
            if tuple(out_c) != tuple(out_py):
                print(f"{name}: backends disagree", file=sys.stderr)
                return 1
            row.update(cython_s=t_c, speedup=t_py / t_c if t_c else float("inf"))
            print(f"{name:32s} python {t_py:9.4f}s  cython {t_c:9.4f}s  x{row['speedup']:.1f}")
        else:
            print(f"{name:32s} python {t_py:9.4f}s")
        rows.append(row)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"backend": kernels.BACKEND, "results": rows}, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
