"""Times the @njit kernels against the pure-numpy fallback.

Run from the repository root:

    python benchmarks/bench_kernels.py

The same workloads run through both implementation sets regardless of the
LF_NO_NUMBA flag; a first untimed call absorbs JIT compilation.
"""
import time

import numpy as np

from lifshitz_fidelity import kernels

REPEATS = 200


def bench(fn, *args):
    fn(*args)  # warmup / compile
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(REPEATS):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / REPEATS)
    return best


def main():
    s = np.linspace(0.0, 1.0, 8193)
    u = np.linspace(np.log(1e-3), np.log(0.5), 8193)
    x = np.linspace(-12.0, 12.0, 8193)
    y = 1.0 / (1.0 + s * s)

    workloads = [
        ("blackening",          (s + 0.5, 0.3, -1.0, -1.3, 1.0, 3.0)),
        ("volume_integrand_r",  (s, 1.0, 99.0, 2, 0.3, -1.0, -1.3, 1.0, 3.0, 0.25)),
        ("wform_top",           (s, 0.5, 2, 0.0, -0.3, -1.0, 3.0, 0.44)),
        ("wform_log",           (u, 0.0, -0.3, -1.0, 3.0)),
        ("gaussian_product",    (x, 1.0, 0.0, 2.0, 0.3)),
        ("simpson",             (y, 1e-4)),
    ]

    numba_impl = kernels.IMPLEMENTATIONS["numba"]
    numpy_impl = kernels.IMPLEMENTATIONS["numpy"]
    if numba_impl is None:
        print("numba unavailable (or disabled before import); timing numpy path only")

    print(f"{'kernel':<20}{'numpy [us]':>12}{'numba [us]':>12}{'speedup':>9}")
    for name, args in workloads:
        t_np = bench(numpy_impl[name], *args)
        if numba_impl is not None:
            t_nb = bench(numba_impl[name], *args)
            print(f"{name:<20}{t_np * 1e6:>12.2f}{t_nb * 1e6:>12.2f}{t_np / t_nb:>9.2f}")
        else:
            print(f"{name:<20}{t_np * 1e6:>12.2f}{'-':>12}{'-':>9}")


if __name__ == "__main__":
    main()
