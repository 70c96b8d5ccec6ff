"""Benchmark: compiled kernel vs NumPy fallback.

Times the raw 2F1 batch evaluation (the quadrature hot loop) in-process for
both backends, then runs a few end-to-end identity verifications in a
subprocess per backend (the selection is fixed at import time).

Run:  python benchmarks/bench_kernels.py
"""
import os
import subprocess
import sys
import time

import numpy as np

BATCH_SIZES = (256, 4096)
IDENTITIES = ("F-I-CP", "S-CP-W6toW2", "W-W5-CP", "C-FRACGS-L")


def time_call(fn, min_time=0.3):
    fn()  # warm up
    n = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(n):
            fn()
        dt = time.perf_counter() - t0
        if dt >= min_time:
            return dt / n
        n = max(n + 1, int(n * min_time / max(dt, 1e-9)))


def bench_batch(impl):
    rng = np.random.default_rng(1)
    rows = {}
    for size in BATCH_SIZES:
        z = np.concatenate([
            rng.uniform(-0.5, 0.8, size // 4),
            rng.uniform(0.82, 0.999, size // 4),
            rng.uniform(-2.0, -0.5, size // 4),
            -np.exp(rng.uniform(1.0, 200.0, size - 3 * (size // 4))),
        ])
        omz = 1.0 - z
        a, b, c = 0.37, 0.61, 1.13
        rows[size] = time_call(lambda: impl.hyp2f1_vec(a, b, c, z, omz))
    return rows


def bench_identities():
    from hyptrans import backend
    from hyptrans.catalog import get_identity, sample_params
    from hyptrans.harness import evaluate_lhs

    print(f"backend = {backend.backend_name()}")
    for ident in IDENTITIES:
        spec = get_identity(ident)
        pts = sample_params(spec, 42, 3)

        def run():
            for pt in pts:
                evaluate_lhs(spec, pt)

        dt = time_call(run, min_time=0.5) / len(pts)
        print(f"  {ident:16s} {dt * 1e3:10.2f} ms/point")


def main():
    from hyptrans import backend

    names = backend.available_backends()
    results = {name: bench_batch(backend.get_backend(name)) for name in names}

    print(f"{'batch 2F1 eval':28s}" + "".join(f"{n:>14s}" for n in names))
    for size in BATCH_SIZES:
        line = f"  n={size:<24d}"
        for name in names:
            line += f"{results[name][size] * 1e6:12.1f}us"
        print(line)
    if "compiled" in results and "numpy" in results:
        for size in BATCH_SIZES:
            ratio = results["numpy"][size] / results["compiled"][size]
            print(f"  n={size}: compiled is {ratio:.1f}x faster")

    print("\nper-point identity verification:")
    for name in names:
        env = dict(os.environ, HYPTRANS_BACKEND=name)
        subprocess.run([sys.executable, __file__, "--identities"],
                       env=env, check=True)


if __name__ == "__main__":
    if "--identities" in sys.argv:
        bench_identities()
    else:
        main()
