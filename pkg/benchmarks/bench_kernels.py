"""Compiled vs pure-Python kernels on the exact workloads of the test suite.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs under both backends; the script checks that the results
agree and prints the best wall time of ``--repeat`` runs.
"""

import argparse
import time

import numpy as np

from talg import (
    Calculus,
    FieldArray,
    build_omega1_ternary,
    catalog,
    check_ternary_leibniz,
    derivation_space,
    field,
    metric_algebra,
)
from talg import _kernels
from talg._kernels import AVAILABLE, using
from talg.ternary import check_associativity
from talg.trimodule import trimodule_check_all


def workloads():
    mt2 = catalog("matrix_trivial", n=2)
    mt3 = catalog("matrix_trivial", n=3)
    om = build_omega1_ternary(mt2)
    metric4 = metric_algebra(FieldArray.eye(field(1), 4), "middle")
    rng = np.random.default_rng(0)
    a = rng.integers(-3, 4, size=(120, 120)).astype(object)
    b = rng.integers(-3, 4, size=(120, 120)).astype(object)
    return {
        "raw matmul 120x120": lambda: _kernels.matmul(a, b).tolist(),
        "strong check, matrix_trivial(3)": lambda: check_associativity(mt3, "strong").ok,
        "B check, metric dim 4": lambda: check_associativity(metric4, "B").ok,
        "Omega^1_T tri-module check": lambda: [r.ok for r in trimodule_check_all(om.tm)],
        "Omega^1_T Leibniz": lambda: check_ternary_leibniz(Calculus.universal(om)).ok,
        "derivations of matrix_trivial(3)": lambda: len(derivation_space(mt3)),
    }


def best_of(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "cython" not in AVAILABLE:
        print("compiled kernels are not built; only the Python backend is available")
    backends = [b for b in ("cython", "python") if b in AVAILABLE]
    print(f"{'workload':36s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in workloads().items():
        row, results = [], []
        for b in backends:
            with using(b):
                t, r = best_of(fn, args.repeat)
            row.append(t)
            results.append(r)
        assert all(r == results[0] for r in results), f"backends disagree on {name}"
        line = f"{name:36s}" + "".join(f"{t:11.3f}s" for t in row)
        if len(row) == 2:
            line += f"{row[1] / row[0]:11.2f}x"
        print(line)


if __name__ == "__main__":
    main()
