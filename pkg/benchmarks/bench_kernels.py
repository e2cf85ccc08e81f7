"""Compare the compiled kernels with the pure-Python fallback.

Each backend runs in its own interpreter (the backend is fixed at import
time), timing polynomial products, truncated products, truncated composition
and monic remainder over Z/2^60 (compiled fast path) and Z/3^64 (multi-word
modulus, Python path in both backends).

    python3 benchmarks/bench_kernels.py [--sizes 32 128 512] [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, timeit
from padyn import kernels
sizes, repeat = json.loads(sys.argv[1]), int(sys.argv[2])
rng = random.Random(1)
out = {"backend": kernels.BACKEND, "rows": []}
for label, m in (("2^60", 2 ** 60), ("3^64", 3 ** 64)):
    for n in sizes:
        a = [rng.randrange(m) for _ in range(n)]
        b = [rng.randrange(m) for _ in range(n)]
        g = [rng.randrange(m) for _ in range(n)] + [1]
        cn = min(n, 64)
        f = [0] + [rng.randrange(m) for _ in range(cn - 1)]
        h = [0] + [rng.randrange(m) for _ in range(cn - 1)]
        cases = {
            "mul": lambda: kernels.mul(a, b, m),
            "mul_trunc": lambda: kernels.mul_trunc(a, b, n, m),
            "rem_monic": lambda: kernels.rem_monic(kernels.mul(a, b, m), g, m),
            "compose_trunc": lambda: kernels.compose_trunc(f, h, cn, m),
        }
        for op, fn in cases.items():
            t = min(timeit.repeat(fn, number=1, repeat=repeat))
            out["rows"].append({"modulus": label, "n": n, "op": op, "seconds": t})
print(json.dumps(out))
"""


def run_backend(pure, sizes, repeat):
    env = dict(os.environ)
    if pure:
        env["PADYN_PURE_PYTHON"] = "1"
    else:
        env.pop("PADYN_PURE_PYTHON", None)
    proc = subprocess.run([sys.executable, "-c", WORKER, json.dumps(sizes), str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[32, 128, 512])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    compiled = run_backend(False, args.sizes, args.repeat)
    python = run_backend(True, args.sizes, args.repeat)
    if compiled["backend"] == python["backend"]:
        print("note: compiled extension not importable; both runs use the fallback")
    print(f"{'modulus':>8} {'n':>5} {'op':>14} {compiled['backend']:>12} "
          f"{python['backend']:>12} {'speedup':>8}")
    for rc, rp in zip(compiled["rows"], python["rows"]):
        speed = rp["seconds"] / rc["seconds"] if rc["seconds"] else float("inf")
        print(f"{rc['modulus']:>8} {rc['n']:>5} {rc['op']:>14} {rc['seconds']:12.6f} "
              f"{rp['seconds']:12.6f} {speed:8.2f}")


if __name__ == "__main__":
    main()
