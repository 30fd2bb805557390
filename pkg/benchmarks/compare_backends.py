"""Compare the compiled and pure-numpy walk backends.

Runs the full affinity assembly on LFR graphs of growing size in two
subprocesses (the backend is chosen at import time from WALKRANK_NUMBA),
checks that both produce bit-identical matrices, and prints a timing
table.

Usage: python3 benchmarks/compare_backends.py [--sizes 50,100,200,400] [--reps 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import tempfile

WORKER = r"""
import hashlib, json, sys, time
import numpy as np
from walkrank import _kernels
from walkrank.generators import LfrConfig, lfr
from walkrank.graph import largest_connected_component
from walkrank.walks import WalkConfig
from walkrank.affinity import assemble_affinity

sizes = json.loads(sys.argv[1])
reps = int(sys.argv[2])
out = sys.argv[3]
_kernels.warmup()
result = {"backend": _kernels.BACKEND, "timings": {}, "digests": {}}
for n in sizes:
    g, _ = lfr(LfrConfig(n=n, avg_degree=5, max_degree=10, mu=0.05,
                         max_community=min(50, n // 2), seed=7))
    g, _ = largest_connected_component(g)
    cfg = WalkConfig(seed=13)
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        mat = assemble_affinity(g, cfg)
        best = min(best, time.perf_counter() - t0)
    result["timings"][str(n)] = best
    result["digests"][str(n)] = hashlib.sha256(mat.values.tobytes()).hexdigest()
with open(out, "w") as fh:
    json.dump(result, fh)
"""


def run_backend(flag: str, sizes, reps: int) -> dict:
    env = dict(os.environ, WALKRANK_NUMBA=flag)
    with tempfile.NamedTemporaryFile(suffix=".json", delete=False) as tmp:
        out = tmp.name
    try:
        subprocess.run(
            [sys.executable, "-c", WORKER, json.dumps(sizes), str(reps), out],
            env=env,
            check=True,
        )
        with open(out) as fh:
            return json.load(fh)
    finally:
        os.unlink(out)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="50,100,200,400")
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    compiled = run_backend("1", sizes, args.reps)
    fallback = run_backend("0", sizes, args.reps)
    if compiled["backend"] == fallback["backend"]:
        print("note: numba unavailable; both runs used the numpy backend")

    print(f"{'n':>6} {compiled['backend']:>12} {fallback['backend']:>12} "
          f"{'speedup':>8} {'identical':>10}")
    for n in sizes:
        key = str(n)
        t1, t2 = compiled["timings"][key], fallback["timings"][key]
        same = compiled["digests"][key] == fallback["digests"][key]
        print(f"{n:>6} {t1:>11.4f}s {t2:>11.4f}s {t2 / t1:>7.2f}x {str(same):>10}")
        if not same:
            print("backend outputs differ; investigate before trusting results",
                  file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
