"""Benchmark the compiled elimination kernel against the pure-Python one.

Runs the same two workloads in subprocesses (backend selection happens at
import time): raw fraction-free row echelon on random integer matrices,
and the end-to-end pencil decomposition of the constant catalog.

    python benchmarks/bench_backends.py
"""

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from biham.exactalg.kernels import BACKEND, row_echelon_ff

rng = random.Random(12345)

def random_matrix(rows, cols, scale):
    return [[rng.randint(-scale, scale) for _ in range(cols)] for _ in range(rows)]

# raw kernel: echelon of 40x36 integer matrices (the staircase-system shape
# behind minimal indices at n = 7)
mats = [random_matrix(40, 36, 10**3) for _ in range(30)]
t0 = time.perf_counter()
for m in mats:
    row_echelon_ff([row[:] for row in m])
raw = time.perf_counter() - t0

from biham.pencil import decompose, kronecker_pencil, jordan_pencil, epsilon_adjacency_pencil
from biham.exactalg import Matrix

catalog = [kronecker_pencil(3), kronecker_pencil(4), jordan_pencil(3, 2),
           epsilon_adjacency_pencil(1),
           kronecker_pencil(2).direct_sum(jordan_pencil(1, 0))]

def random_invertible(n):
    while True:
        p = Matrix.from_rows(random_matrix(n, n, 3))
        if p.rank() == n:
            return p

t0 = time.perf_counter()
for pencil in catalog:
    for _ in range(20):
        decompose(pencil.congruence(random_invertible(pencil.n)))
full = time.perf_counter() - t0

print(json.dumps({"backend": BACKEND, "raw_echelon_s": raw, "decompose_s": full}))
"""


def run(backend_env):
    env = dict(os.environ)
    env.pop("BIHAM_PURE", None)
    env.update(backend_env)
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    results = [run({"BIHAM_PURE": "1"}), run({})]
    if results[1]["backend"] == results[0]["backend"]:
        print("compiled kernel unavailable; pure backend only:")
    print(f"{'backend':<10} {'raw echelon (s)':>16} {'decompose x100 (s)':>20}")
    for r in results:
        print(f"{r['backend']:<10} {r['raw_echelon_s']:>16.3f} {r['decompose_s']:>20.3f}")
    if results[1]["backend"] != results[0]["backend"]:
        for key, label in (("raw_echelon_s", "raw echelon"),
                           ("decompose_s", "decompose")):
            speedup = results[0][key] / results[1][key]
            print(f"{label}: compiled is {speedup:.2f}x the pure backend")


if __name__ == "__main__":
    main()
