"""Benchmark of the dense GF(p) row-reduction kernel: compiled vs pure.

The kernel dominates the runtime of the heaviest computation, the graded
homology of the bimodule complex of the largest exceptional preset, so both
implementations are timed on synthetic matrices of comparable shape and on
that real workload.

Run:  python benchmarks/bench_echelon.py [--full]
"""

import argparse
import os
import random
import sys
import time


def _bench_kernel(rref_mod, sizes, p, seed=7):
    rng = random.Random(seed)
    out = []
    for n, density in sizes:
        rows = []
        for _ in range(n):
            row = [0] * n
            for _ in range(max(1, int(n * density))):
                row[rng.randrange(n)] = rng.randrange(1, p)
            rows.append(row)
        t0 = time.perf_counter()
        reduced, pivots = rref_mod([r[:] for r in rows], n, p)
        dt = time.perf_counter() - t0
        out.append((n, density, len(pivots), dt))
    return out


def _bench_real_workload(label):
    from koszulkit.duality import ae_coefficient_route
    from koszulkit.fields import GF
    from koszulkit.koszul import KoszulCalculus
    from koszulkit.presets import Preset

    preset = Preset("E6", GF(2))
    kd = KoszulCalculus(preset.algebra, 3)
    t0 = time.perf_counter()
    ae = ae_coefficient_route(kd)
    dt = time.perf_counter() - t0
    assert ae["h1_zero"]
    print(f"  [{label}] bimodule-complex homology of the E6 preset over "
          f"GF(2): {dt:.2f}s")
    return dt


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--full", action="store_true",
                        help="also run the E8 real workload")
    args = parser.parse_args()

    from koszulkit import _modkernel_py
    try:
        from koszulkit import _modkernel
        kernels = [("compiled", _modkernel.rref_mod),
                   ("pure", _modkernel_py.rref_mod)]
    except ImportError:
        print("compiled kernel unavailable; benchmarking the pure kernel only")
        kernels = [("pure", _modkernel_py.rref_mod)]

    sizes = [(64, 0.5), (128, 0.3), (256, 0.1), (512, 0.05), (512, 0.3)]
    p = 5
    print(f"dense reduced row echelon over GF({p})")
    print(f"{'n':>5} {'density':>8} {'rank':>5} " +
          " ".join(f"{name:>12}" for name, _f in kernels))
    results = {name: _bench_kernel(f, sizes, p) for name, f in kernels}
    for k, (n, density, _r, _dt) in enumerate(results[kernels[0][0]]):
        rank = results[kernels[0][0]][k][2]
        cells = " ".join(f"{results[name][k][3]:>11.4f}s" for name, _f in kernels)
        print(f"{n:>5} {density:>8.2f} {rank:>5} {cells}")
    if len(kernels) == 2:
        speedups = [results["pure"][k][3] / max(results["compiled"][k][3], 1e-9)
                    for k in range(len(sizes))]
        print(f"speedup (pure/compiled): min {min(speedups):.1f}x, "
              f"max {max(speedups):.1f}x")

    print("\nreal workload (selected backend first, then forced-pure rerun "
          "in a subprocess):")
    _bench_real_workload("selected")
    if os.environ.get("KOSZULKIT_PURE"):
        print("  (KOSZULKIT_PURE already set; skipping the forced rerun)")
    else:
        import subprocess
        env = dict(os.environ, KOSZULKIT_PURE="1")
        code = (
            "from benchmarks.bench_echelon import _bench_real_workload;"
            "_bench_real_workload('pure')")
        subprocess.run([sys.executable, "-c", code], env=env,
                       cwd=os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    if args.full:
        from koszulkit.duality import ae_coefficient_route
        from koszulkit.fields import GF
        from koszulkit.koszul import KoszulCalculus
        from koszulkit.presets import Preset
        preset = Preset("E8", GF(2))
        kd = KoszulCalculus(preset.algebra, 3)
        t0 = time.perf_counter()
        ae_coefficient_route(kd)
        print(f"  [selected] E8 over GF(2): {time.perf_counter()-t0:.1f}s")


if __name__ == "__main__":
    main()
