"""Compare the compiled term kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--no-end-to-end]

Part one times the raw kernels on seeded random term dictionaries and checks
that both backends return identical results. Part two runs the cocycle suite
on PiGr(4,2) in a subprocess per backend (``SUPERGRASS_PURE_PYTHON`` selects
the fallback).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from supergrass import _kernels_py

try:
    from supergrass import _kernels
except ImportError:  # extension not built
    _kernels = None


def random_terms(rng, size, n_even=6, n_odd=10, width=16):
    out = {}
    for _ in range(size):
        exps = sum(rng.randrange(3) << (width * i) for i in range(n_even))
        mask = rng.getrandbits(n_odd) & rng.getrandbits(n_odd)
        out[(exps, mask)] = (rng.randint(-9, 9) or 1, rng.choice([0, 0, rng.randint(-5, 5)]))
    return out


def bench_kernels(repeat):
    rng = random.Random(7)
    cases = [(random_terms(rng, s), random_terms(rng, s)) for s in (8, 32, 96)]
    rows = []
    for a, b in cases:
        for name in ("mul_terms", "add_terms"):
            py = getattr(_kernels_py, name)
            row = [name, len(a)]
            t_py = min(timeit.repeat(lambda: py(a, b), number=20, repeat=repeat)) / 20
            row.append(t_py)
            if _kernels is not None:
                cy = getattr(_kernels, name)
                if cy(a, b) != py(a, b):
                    raise SystemExit(f"backends disagree on {name}")
                t_cy = min(timeit.repeat(lambda: cy(a, b), number=20, repeat=repeat)) / 20
                row += [t_cy, t_py / t_cy]
            rows.append(row)
    print(f"{'kernel':10} {'terms':>6} {'python [ms]':>12} {'compiled [ms]':>14} {'speedup':>8}")
    for row in rows:
        extra = f"{row[3] * 1e3:14.3f} {row[4]:8.2f}" if len(row) > 3 else f"{'n/a':>14} {'':>8}"
        print(f"{row[0]:10} {row[1]:6d} {row[2] * 1e3:12.3f} {extra}")


END_TO_END = """
import time
from supergrass import BACKEND, pi_atlas
from supergrass.atlas import atlas_cocycle_suite
t = time.perf_counter()
rep = atlas_cocycle_suite(pi_atlas(4, 2))
print(BACKEND, rep.passed, round(time.perf_counter() - t, 2))
"""


def bench_end_to_end():
    print("\ncocycle suite on PiGr(4,2):")
    for pure in ("1", "0"):
        env = dict(os.environ, SUPERGRASS_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"  backend {out[0]:8} passed {out[1]:5} {out[2]} s")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--no-end-to-end", action="store_true")
    args = ap.parse_args()
    bench_kernels(args.repeat)
    if not args.no_end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()
