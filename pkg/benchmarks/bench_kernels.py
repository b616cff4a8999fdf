"""Time the pure-Python and Cython kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each row reports the best of ``--repeat`` runs per backend and the speedup.
Caches are cleared between runs so the full series construction is timed.
"""

import argparse
import time

from fricke import families, kernels, modfunc
from fricke.cyclotomic import CycloNum, euler_phi
from fricke.modfunc import FracVec
from fricke.qseries import QExp


def _reset():
    modfunc.clear_caches()
    families._generator_series.cache_clear()


def _dense(level, K, seed):
    # deterministic pseudo-random series with full cyclotomic coordinates
    terms = {}
    x = seed
    for k in range(K):
        coords = []
        for _ in range(euler_phi(level)):
            x = (1103515245 * x + 12345) % 2**31
            coords.append(x % 201 - 100)
        terms[k] = CycloNum(level, coords)
    return QExp.from_terms(terms, order=K)


def workload_convolve():
    a, b = _dense(24, 120, 1), _dense(24, 120, 2)
    return lambda: a * b


def workload_inverse():
    a = _dense(12, 150, 3) + QExp.constant(1)
    return lambda: a.inv()


def workload_identity():
    u, v = FracVec(8, 1, 0), FracVec(8, 3, 5)

    def run():
        _reset()
        modfunc.fricke_difference_sides(u, v, 20)

    return run


WORKLOADS = {
    "convolve Q(zeta_24), 120 terms": workload_convolve,
    "inverse Q(zeta_12), 150 terms": workload_inverse,
    "fricke difference N=8, order 20": workload_identity,
}


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    names = sorted(kernels.available_backends())
    print(f"{'workload':<36}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    prev = kernels.BACKEND
    try:
        for label, make in WORKLOADS.items():
            row = {}
            for name in names:
                kernels.use_backend(name)
                _reset()
                row[name] = best_of(make(), args.repeat)
            speed = row["python"] / row["cython"] if "cython" in row else float("nan")
            print(f"{label:<36}" + "".join(f"{row[n]:>11.3f}s" for n in names) + f"{speed:>9.1f}x")
    finally:
        kernels.use_backend(prev)
        _reset()


if __name__ == "__main__":
    main()
