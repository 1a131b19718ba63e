"""Compare the compiled and pure-Python enumeration kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from twocomm.kernels import _pykernels

try:
    from twocomm.kernels import _ckernels
except ImportError:
    _ckernels = None

CASES = [(2, 2), (3, 2), (5, 2), (2, 3), (7, 2)]


def run(mod, p, m):
    comm = mod.commutator_bitmap(p, m)
    codes = [c for c in range(len(comm)) if comm[c]]
    prod = mod.product_bitmap(p, m, codes)
    return comm, prod


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the fallback is available")
    print(f"{'ring':<10}{'python s':>12}{'cython s':>12}{'speedup':>10}  agree")
    for p, m in CASES:
        tp, rp = best_of(lambda: run(_pykernels, p, m), args.repeat)
        if _ckernels is None:
            print(f"M{m}(F{p})".ljust(10) + f"{tp:12.4f}")
            continue
        tc, rc = best_of(lambda: run(_ckernels, p, m), args.repeat)
        print(f"M{m}(F{p})".ljust(10) + f"{tp:12.4f}{tc:12.4f}{tp / tc:10.1f}  {rp == rc}")


if __name__ == "__main__":
    main()
