"""Compare the compiled and pure-Python echelon kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Kernel timings use random sparse integer matrices over Q and GF(p).  The
end-to-end timing runs the headline verification at degree 6 in a child
process per backend (the backend is fixed at import time).
"""
import argparse
import os
import random
import subprocess
import sys
import time

from mixwreath.core import kernels


def random_rows(rng, nrows, ncols, density, p):
    rows = []
    for _ in range(nrows):
        r = {}
        for c in range(ncols):
            if rng.random() < density:
                x = rng.randint(-5, 5)
                if p:
                    x %= p
                if x:
                    r[c] = x
        rows.append(r)
    return rows


def time_kernel(mod, rows, p, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        mod.echelonize([dict(r) for r in rows], p)
        best = min(best, time.perf_counter() - t)
    return best


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["MIXWREATH_PURE_PYTHON"] = "1"
    else:
        env.pop("MIXWREATH_PURE_PYTHON", None)
    here = os.path.dirname(os.path.abspath(__file__))
    cfg = os.path.join(here, "..", "scenarios", "headline.toml")
    t = time.perf_counter()
    subprocess.run([sys.executable, "-m", "mixwreath", "verify", cfg, "--degree", "6"],
                   env=env, check=True, stdout=subprocess.DEVNULL)
    return time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    if kernels.compiled_kernels is None:
        print("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`")
        return 1
    rng = random.Random(7)
    print(f"{'case':<28}{'python s':>10}{'compiled s':>12}{'speedup':>9}")
    # rational fill-in grows fast, so the Q cases stay smaller
    sizes = {0: ((80, 0.06), (120, 0.05), (160, 0.04)),
             10007: ((120, 0.05), (250, 0.03), (400, 0.02))}
    for p in (0, 10007):
        for n, density in sizes[p]:
            rows = random_rows(rng, n, n, density, p)
            tp = time_kernel(kernels.py_kernels, rows, p, args.repeat)
            tc = time_kernel(kernels.compiled_kernels, rows, p, args.repeat)
            name = f"{'Q' if not p else f'GF({p})'} {n}x{n} d={density}"
            print(f"{name:<28}{tp:>10.4f}{tc:>12.4f}{tp / tc:>9.2f}", flush=True)
    if not args.skip_end_to_end:
        tp, tc = end_to_end(True), end_to_end(False)
        print(f"{'headline verify, degree 6':<28}{tp:>10.3f}{tc:>12.3f}{tp / tc:>9.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
