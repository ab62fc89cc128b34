"""Benchmark the compiled Laguerre-series kernel against the NumPy fallback.

The kernel dominates every Fock-side quadrature (each integrand evaluation
is a weighted Laguerre series per radius), so this is the one hot loop
worth compiling.  Usage:

    python benchmarks/bench_kernels.py [--repeats 7]
"""

import argparse
import time

import numpy as np

from phasenorm import backend
from phasenorm.fock import make_thermal_fock, radial_profile
from phasenorm.quadrature import integrate_radial_abs_pow

CASES = [
    # (cutoff N, number of radii) spanning scalar bisection calls up to
    # batched panel evaluations on classicalized states
    (8, 1),
    (8, 16),
    (8, 4096),
    (64, 1),
    (64, 16),
    (64, 4096),
    (256, 16),
    (256, 4096),
]


def bench_kernel(fn, weights, tau, u, pref, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(weights, tau, u, pref)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    impls = backend.available_backends()
    print(f"active backend: {backend.KERNEL_BACKEND}; "
          f"available: {', '.join(sorted(impls))}")
    print(f"{'cutoff':>7} {'radii':>6} "
          + " ".join(f"{name:>12}" for name in sorted(impls))
          + ("   speedup" if len(impls) > 1 else ""))

    rng = np.random.default_rng(0)
    for cutoff, m in CASES:
        weights = rng.uniform(0.0, 1.0, size=cutoff + 1)
        weights /= weights.sum()
        rho = np.linspace(0.0, 8.0, m)
        u = -4.0 * rho**2
        pref = 2.0 * np.exp(-2.0 * rho**2)
        times = {name: bench_kernel(fn, weights, -1.0, u, pref, args.repeats)
                 for name, fn in impls.items()}
        row = f"{cutoff:>7} {m:>6} " + " ".join(
            f"{times[name] * 1e6:>10.1f}us" for name in sorted(impls))
        if len(impls) > 1:
            row += f"   {times['numpy'] / times['cython']:>7.1f}x"
        print(row)

    # end-to-end: one full sign-cut adaptive norm integral per backend
    state = make_thermal_fock(1.0, cutoff=60)
    for name in sorted(impls):
        backend.wigner_series = impls[name]
        t0 = time.perf_counter()
        est = integrate_radial_abs_pow(radial_profile(state, 0.0), 1.0, 1e-8)
        dt = time.perf_counter() - t0
        print(f"radial norm integral (cutoff 60, tol 1e-8) via {name:>6}: "
              f"{dt * 1e3:7.2f} ms  (value {est.value:.9f})")
    backend.wigner_series = impls[backend.KERNEL_BACKEND]


if __name__ == "__main__":
    main()
