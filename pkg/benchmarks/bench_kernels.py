"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Also times one end-to-end cohomology computation under each backend by
re-running itself in a subprocess with RATMODELS_PURE_PYTHON set.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from ratmodels import _pykernels

try:
    from ratmodels import _ckernels
except ImportError:
    _ckernels = None


def _matrix(rng, n):
    return [[Fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(n)]


def _words(rng, count):
    out = []
    for _ in range(count):
        names = rng.sample("abcdefgh", 4)
        w1 = tuple(sorted((rng.randint(2, 9), n, 1) for n in names[:2]))
        w2 = tuple(sorted((rng.randint(2, 9), n, 1) for n in names[2:]))
        out.append((w1, w2))
    return out


def kernel_table(repeat):
    rng = random.Random(0)
    mats = [_matrix(rng, 24) for _ in range(5)]
    pairs = _words(rng, 2000)
    rows = []
    for label, mod in (("python", _pykernels), ("cython", _ckernels)):
        if mod is None:
            rows.append((label, None, None))
            continue
        t_e = min(timeit.repeat(lambda: [mod.echelon(m, 24) for m in mats], number=1, repeat=repeat))
        t_w = min(timeit.repeat(lambda: [mod.word_product(a, b) for a, b in pairs], number=1, repeat=repeat))
        rows.append((label, t_e, t_w))
    return rows


END_TO_END = ("import time; from ratmodels import catalog; from ratmodels.cohomology import cohomology_dim;"
              "m = catalog.costoya_viruel_model(catalog.Graph(['1'])); t = time.perf_counter();"
              "[cohomology_dim(m, k) for k in range(150, 200)]; print(time.perf_counter() - t)")


def end_to_end():
    out = {}
    for label, env in (("cython", {}), ("python", {"RATMODELS_PURE_PYTHON": "1"})):
        res = subprocess.run([sys.executable, "-c", END_TO_END], env={**os.environ, **env},
                             capture_output=True, text=True, check=True)
        out[label] = float(res.stdout.strip())
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'backend':8} {'echelon 5x(24x24)':>18} {'word_product x2000':>20}")
    for label, te, tw in kernel_table(args.repeat):
        if te is None:
            print(f"{label:8} {'not built':>18}")
        else:
            print(f"{label:8} {te * 1e3:16.2f}ms {tw * 1e3:18.2f}ms")
    if _ckernels is not None:
        e2e = end_to_end()
        print(f"cohomology H^150..H^199 of the one-vertex CV model: "
              f"cython {e2e['cython']:.2f}s, python {e2e['python']:.2f}s")


if __name__ == "__main__":
    main()
