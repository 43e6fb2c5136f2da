"""Compare the numba and numpy row-reduction kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--sizes 50,100,200,400]

Part one times ``rref_modp`` on random dense matrices with both backends.
Part two times a real workload (a ``verify`` batch over F_p), once as fresh
subprocesses with and without ``TRUNSYM_DISABLE_JIT=1`` and once in a warm
process.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from trunsym.kernels import HAVE_NUMBA, rref_modp


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_random(sizes, primes, repeat, seed=0):
    rng = np.random.default_rng(seed)
    print(f"{'shape':>12} {'p':>11} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}")
    for size in sizes:
        for p in primes:
            # rank-deficient on purpose: half the rows are combinations of the others
            base = rng.integers(0, p, size=(size // 2, size), dtype=np.int64)
            mix = rng.integers(0, p, size=(size - size // 2, size // 2), dtype=np.int64)
            m = np.vstack([base, (mix @ base) % p if p < 2**20 else base[: size - size // 2]])
            ref, piv_ref = rref_modp(m, p, jit=False)
            if HAVE_NUMBA:
                rref_modp(m[:4], p, jit=True)  # compile outside the timing
                got, piv = rref_modp(m, p, jit=True)
                assert np.array_equal(got, ref) and np.array_equal(piv, piv_ref)
                t_jit = best_of(lambda: rref_modp(m, p, jit=True), repeat)
            else:
                t_jit = float("nan")
            t_np = best_of(lambda: rref_modp(m, p, jit=False), repeat)
            print(f"{str(m.shape):>12} {p:>11} {t_jit:>10.4f} {t_np:>10.4f} {t_np / t_jit:>8.1f}")


WORKLOAD = ["verify", "--case", "thm1b", "--char", "3", "--n", "3..5", "--d", "1..3", "--format", "json"]


def bench_workload(repeat):
    print("\nworkload: trunsym " + " ".join(WORKLOAD))
    outputs = {}
    for label, env in (("numba", {}), ("numpy", {"TRUNSYM_DISABLE_JIT": "1"})):
        full = dict(os.environ, **env)
        times = []
        for _ in range(repeat):
            start = time.perf_counter()
            res = subprocess.run([sys.executable, "-m", "trunsym", *WORKLOAD], env=full,
                                 capture_output=True, text=True)
            times.append(time.perf_counter() - start)
        outputs[label] = res.stdout
        print(f"  {label}: best {min(times):.2f}s over {repeat} runs (exit {res.returncode})")
    print("  reports identical:", outputs["numba"] == outputs["numpy"])


def bench_in_process(repeat):
    # warm process, so numba import and compilation are excluded
    from trunsym.exact_linalg import GF
    from trunsym.truncated_ideal import verify_theorem

    points = [(n, d) for n in range(3, 6) for d in range(1, 4)]
    print("\nin-process thm1b over F_3, n = 3..5, d = 1..3 (warm)")
    for label, flag in (("numba", "0"), ("numpy", "1")):
        os.environ["TRUNSYM_DISABLE_JIT"] = flag
        verify_theorem("thm1b", 3, 1, GF(3))
        t = best_of(lambda: [verify_theorem("thm1b", n, d, GF(3)) for n, d in points], repeat)
        print(f"  {label}: best {t:.2f}s")
    os.environ.pop("TRUNSYM_DISABLE_JIT", None)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,100,200,400")
    ap.add_argument("--primes", default="2,3,2147483647")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-workload", action="store_true")
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba is not installed; only the numpy column is meaningful")
    bench_random([int(s) for s in args.sizes.split(",")], [int(p) for p in args.primes.split(",")], args.repeat)
    if not args.skip_workload:
        bench_workload(args.repeat)
        bench_in_process(args.repeat)


if __name__ == "__main__":
    main()
