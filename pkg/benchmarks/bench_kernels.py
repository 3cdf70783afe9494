#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernel backends.

The backend is fixed at import time, so each one runs in its own
subprocess (``STEMCODE_DISABLE_NUMBA=1`` selects numpy). Numba timings
exclude JIT compilation: every workload is called once before timing.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from stemcode import kernels
from stemcode.critical import TransitionModel, maximize_critical
from stemcode.codes import CodeParams, generate_markov_code
from stemcode.weights import builtin_tables, load_builtin

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
w = load_builtin("Unified1998")
X = rng.integers(0, 4, (2000, 20)).astype(np.uint8)
tables = builtin_tables()
model = TransitionModel.uniform()

work = {
    "similarity_matrix 2000x2000, n=20": lambda: kernels.similarity_matrix(w.flat, X, X),
    "maximize_critical x8 builtins": lambda: [maximize_critical(t) for t in tables],
    "generate_markov_code n=12, 2e4 trials": lambda: generate_markov_code(
        w, model, CodeParams(12, 9.0), 20_000, seed=1),
}
out = {"backend": kernels.BACKEND}
for name, fn in work.items():
    fn()  # warm-up / JIT
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out[name] = best
print(json.dumps(out))
"""


def run_backend(disable_numba: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("STEMCODE_DISABLE_NUMBA", None)
    if disable_numba:
        env["STEMCODE_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    t0 = time.perf_counter()
    fast = run_backend(False, args.repeat)
    slow = run_backend(True, args.repeat)
    if fast["backend"] != "numba":
        print("numba not available; both runs used the numpy backend")

    names = [k for k in slow if k != "backend"]
    width = max(map(len, names))
    print(f"{'workload':<{width}}  {fast['backend']:>10}  {'numpy':>10}  speedup")
    for k in names:
        print(f"{k:<{width}}  {fast[k]:10.4f}  {slow[k]:10.4f}  {slow[k] / fast[k]:6.1f}x")
    print(f"(best of {args.repeat}, seconds; total wall {time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
