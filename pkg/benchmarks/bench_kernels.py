"""Compare the gmpy2 and Fraction rational backends on typical workloads.

Each backend runs in its own interpreter because the backend is chosen at
import time through KAPPAFORMS_RATIONAL.

    python3 benchmarks/bench_kernels.py [--n 4] [--order 6] [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from kappaforms import BACKEND, ActionEngine, build_realization
from kappaforms import verifier as V

n, order, repeat = map(int, sys.argv[1:4])
timings = {}

def timed(name, fn):
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    timings[name] = best

timed("build d2", lambda: build_realization(n, order, "d2", "1/2"))
r = build_realization(n, order, "d1", 1)
timed("lorentz closure", lambda: V.check_lorentz_closure(r))
timed("form properties", lambda: V.check_form_properties(r))
timed("order-2 actions", lambda: V.check_action_order2(r, ActionEngine(r)))
timed("jacobi (50 samples)", lambda: V.jacobi_suite(r, samples=50))
print(json.dumps({"backend": BACKEND, "timings": timings}))
"""


def run(backend, n, order, repeat):
    env = dict(os.environ, KAPPAFORMS_RATIONAL=backend)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(n), str(order), str(repeat)],
                          capture_output=True, text=True, env=env, check=True)
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--order", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    results = [run(b, args.n, args.order, args.repeat) for b in ("gmpy2", "fraction")]
    if results[0]["backend"] != "gmpy2":
        print("gmpy2 not importable; both runs used Fraction")
    print(f"{'workload':24} {'gmpy2 [s]':>10} {'Fraction [s]':>13} {'ratio':>7}")
    for name, fast in results[0]["timings"].items():
        slow = results[1]["timings"][name]
        print(f"{name:24} {fast:10.3f} {slow:13.3f} {slow / fast:7.2f}")


if __name__ == "__main__":
    main()
