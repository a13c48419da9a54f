"""Compare the compiled kernels against the numpy fallback.

Times the three hot operations (transport step, tridiagonal solve, fused
span runner) at several grid sizes, plus two end-to-end runs. Run as

    python benchmarks/bench_backends.py
"""

import time

import numpy as np

from brinkfront import _kernels_py as kpy

try:
    from brinkfront import _kernels as kc
except ImportError:
    kc = None


def best_of(fn, reps, trials=5):
    best = float("inf")
    for _ in range(trials):
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        best = min(best, (time.perf_counter() - t0) / reps)
    return best


def front_state(m, dx, k):
    x = (np.arange(m) + 0.5) * dx - m * dx / 2.0
    n = np.clip(1.0 - np.clip(x, 0.0, None) / (20 * dx), 0.0, 1.0)
    p = np.zeros(m)
    p[n > 0] = (k / (k - 1.0)) * np.exp((k - 1.0) * np.log(n[n > 0]))
    return n, p


def robin_diag(m, dx, nu):
    c = nu / dx ** 2
    delta = dx ** 2 / nu
    lam = 1.0 + 0.5 * delta + np.sqrt(delta + 0.25 * delta ** 2)
    diag = np.full(m, 1.0 + 2.0 * c)
    diag[0] -= c / lam
    diag[-1] -= c / lam
    return diag, -c


def bench_kernels(m):
    dx, nu, k = 40.0 / m, 1.0, 100.0
    n, p = front_state(m, dx, k)
    g = 1.0 - p
    diag, off = robin_diag(m, dx, nu)
    rows = {}
    for name, mod in (("python", kpy),) + ((("compiled", kc),) if kc else ()):
        tri = mod.TridiagSolver(diag, off)
        w = tri.solve(p)
        reps = max(3, min(300, 3_000_000 // m))
        step = best_of(lambda: mod.step_transport(n, g, w, 1e-4, dx, nu), reps)
        solve = best_of(lambda: tri.solve(p), reps)
        span = best_of(
            lambda: mod.advance_span(n, p, w, 0.0, 20 * 1e-4, dx, nu, k, 1.0, 0.4, 1e-4, tri),
            max(1, reps // 10),
        )
        rows[name] = (step, solve, span / 20.0)
    return rows


def bench_end_to_end():
    import os
    import subprocess
    import sys
    import tempfile

    code = """
import time, brinkfront as bf
grid = bf.Grid1D.from_half_width(20.0, {dx})
params = bf.ModelParams(k=100.0, nu={nu}, p_max=1.0)
ctrl = bf.TimeControls(t_end={t_end}, snapshot_every=1e9, snapshot_times=(), diag_every=1e9)
state = bf.initial_indicator_state(grid, params)
t0 = time.time()
final, report = bf.run(state, ctrl, params)
print(f"{{bf.backend_name()}} {{report.n_steps}} {{time.time()-t0:.3f}}")
"""
    cases = [("viscous nu=1 dx=2e-3 to t=2", dict(dx=2e-3, nu=1.0, t_end=2.0)),
             ("darcy   nu=0 dx=0.05 to t=1", dict(dx=0.05, nu=0.0, t_end=1.0))]
    print("\nend-to-end runs")
    print(f"{'case':34s} {'backend':9s} {'steps':>8s} {'wall':>8s}")
    for label, kw in cases:
        for env_extra in ({}, {"BRINKFRONT_PURE_PYTHON": "1"}):
            env = dict(os.environ, **env_extra)
            out = subprocess.run([sys.executable, "-c", code.format(**kw)],
                                 env=env, capture_output=True, text=True)
            backend, steps, wall = out.stdout.split()
            print(f"{label:34s} {backend:9s} {steps:>8s} {wall:>7s}s")


def main():
    if kc is None:
        print("compiled extension not built; benchmarking the fallback only")
    print(f"{'m':>7s} {'op':14s} {'python':>12s} {'compiled':>12s} {'speedup':>9s}")
    for m in (800, 8000, 20000):
        rows = bench_kernels(m)
        for idx, op in enumerate(("step_transport", "tridiag solve", "span (per step)")):
            py = rows["python"][idx]
            if kc:
                cx = rows["compiled"][idx]
                print(f"{m:7d} {op:14s} {py*1e6:10.1f}us {cx*1e6:10.1f}us {py/cx:8.2f}x")
            else:
                print(f"{m:7d} {op:14s} {py*1e6:10.1f}us {'-':>12s} {'-':>9s}")
    bench_end_to_end()


if __name__ == "__main__":
    main()
