"""Compare the compiled kernel backend against the pure-Python fallback.

The three workloads mirror the library's hot paths: infinite q-products
(weight grids), terminating series (polynomial evaluation), and adaptive
series (transcendental-function evaluation inside root finding).

Run:  python benchmarks/bench_backends.py
"""
import time

from awspec import _kernels_py

try:
    from awspec import _kernels
except ImportError:
    _kernels = None


def bench(fn, reps=3):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workload_qpoch_inf(mod):
    def run():
        acc = 0.0
        for k in range(4000):
            z = complex(0.001 * (k % 900) - 0.45, 0.0003 * k % 0.4)
            acc += abs(mod.qpoch_inf(z, 0.5, 1e-14, 10000))
        return acc
    return run

def workload_terminating(mod):
    num = [2.0 ** 8, 0.31 + 0.2j, 0.7, -0.41]
    den = [0.45, -0.63, 0.52]
    def run():
        acc = 0.0
        for k in range(3000):
            z = complex(0.01 + 0.0002 * k, 0.1)
            acc += abs(mod.phi_sum(num, den, 0.5, z, 0, 8, 1e-14, 10000))
        return acc
    return run

def workload_adaptive(mod):
    def run():
        acc = 0.0
        for k in range(2000):
            x = 1.2 + 0.001 * k
            num = [0.707 ** 1.3, 0.8409 / x]
            den = [-(0.707 ** 2.5) / x]
            acc += abs(mod.phi_sum(num, den, 0.707, 0.707 ** 0.8, 0, -1,
                                   1e-14, 10000))
        return acc
    return run


def main():
    rows = []
    for name, factory in [("qpoch_inf grid (weights)", workload_qpoch_inf),
                          ("terminating 4phi3 (polynomials)", workload_terminating),
                          ("adaptive 2phi1 (F evaluation)", workload_adaptive)]:
        tp = bench(factory(_kernels_py))
        if _kernels is not None:
            tc = bench(factory(_kernels))
            rows.append((name, tp, tc, tp / tc))
        else:
            rows.append((name, tp, None, None))
    print(f"{'workload':36s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, tp, tc, sp in rows:
        if tc is None:
            print(f"{name:36s} {tp * 1e3:9.1f}ms {'n/a':>10s} {'n/a':>8s}")
        else:
            print(f"{name:36s} {tp * 1e3:9.1f}ms {tc * 1e3:9.1f}ms {sp:7.1f}x")
    if _kernels is None:
        print("\ncompiled backend not built; showing pure-Python timings only")


if __name__ == "__main__":
    main()
