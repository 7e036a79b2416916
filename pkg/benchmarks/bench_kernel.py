"""Compare the compiled and pure-Python integer-polynomial kernels.

Runs the same workloads once per backend in a fresh interpreter (the
choice is frozen at import time) and prints a small table.  Workloads:
a synthetic fraction-free echelon pass on dense random Laurent
matrices, and the real radical computation for a catalog datum up to a
height bound.

    python benchmarks/bench_kernel.py --datum osp16 --height 5
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def synthetic_echelon(seed, size, reps):
    from covquant import kernels

    rng = random.Random(seed)
    total = 0.0
    for _ in range(reps):
        mat = [[kernels.lp_trim(-3, [rng.randint(-5, 5) for _ in range(7)])
                for _ in range(size)] for _ in range(size)]
        t0 = time.perf_counter()
        kernels.echelon([list(r) for r in mat], size)
        kernels.det_bareiss(mat)
        total += time.perf_counter() - t0
    return total


def radical_sweep(datum_name, height_bound):
    from covquant.cartan import height
    from covquant.catalog import catalog_datum
    from covquant.halfqg import QuotientContext

    ctx = QuotientContext(*catalog_datum(datum_name))
    t0 = time.perf_counter()
    for h in range(1, height_bound + 1):
        for nu in ctx.free.weights_up_to_height(h):
            if height(nu) == h:
                ctx.radical(nu)
    return time.perf_counter() - t0


def run_worker(args):
    from covquant import kernels

    out = {
        "impl": kernels.IMPLEMENTATION,
        "echelon": synthetic_echelon(args.seed, args.size, args.repeat),
        "radical": radical_sweep(args.datum, args.height),
    }
    print(json.dumps(out))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--datum", default="osp16")
    ap.add_argument("--height", type=int, default=5)
    ap.add_argument("--size", type=int, default=9,
                    help="synthetic matrix size")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        run_worker(args)
        return

    rows = []
    for impl in ("c", "py"):
        env = dict(os.environ, COVQUANT_KERNEL=impl)
        cmd = [sys.executable, os.path.abspath(__file__), "--worker",
               "--datum", args.datum, "--height", str(args.height),
               "--size", str(args.size), "--repeat", str(args.repeat),
               "--seed", str(args.seed)]
        proc = subprocess.run(cmd, env=env, capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"{impl}: failed\n{proc.stderr}", file=sys.stderr)
            continue
        rows.append(json.loads(proc.stdout))

    print(f"{'kernel':<8}{'echelon[s]':>12}{'radical[s]':>12}")
    for row in rows:
        print(f"{row['impl']:<8}{row['echelon']:>12.3f}"
              f"{row['radical']:>12.3f}")
    if len(rows) == 2:
        for key in ("echelon", "radical"):
            base, alt = rows[0][key], rows[1][key]
            if base > 0:
                print(f"{key}: py/c = {alt / base:.1f}x")


if __name__ == "__main__":
    main()
