"""Compiled vs pure-Python search kernels on identical workloads.

    python benchmarks/bench_kernels.py [--repeat N] [--json]

Each workload is run on both backends; the candidate lists are checked to be
identical before any timing is reported.
"""
import argparse
import json
import platform
import statistics
import sys
import time

from sqorbits import _kernels_py

try:
    from sqorbits import _kernels as _compiled
except ImportError:
    _compiled = None

WORKLOADS = [
    ("fixed_y", "y=9/8 p,s<=40", (9, 8, -40, 40, 40, True)),
    ("fixed_y", "y=37/29 p,s<=150", (37, 29, -150, 150, 150, True)),
    ("fixed_y", "y=5/3 p,s<=100 no-coprime", (5, 3, -100, 100, 100, False)),
    ("m_box", "|p|,|q|,|r|<=6", (-6, 6, 6, True)),
    ("m_box", "|p|,|q|,|r|<=12", (-12, 12, 12, True)),
]


def timed(fn, args, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation` first", file=sys.stderr)
        return 1
    rows = []
    for kernel, label, kargs in WORKLOADS:
        t_py, out_py = timed(getattr(_kernels_py, kernel + "_candidates"), kargs, args.repeat)
        t_c, out_c = timed(getattr(_compiled, kernel + "_candidates"), kargs, args.repeat)
        if out_py != out_c:
            print(f"backends disagree on {kernel} {label}", file=sys.stderr)
            return 2
        rows.append({"kernel": kernel, "workload": label, "candidates": len(out_c),
                     "python_s": t_py, "cython_s": t_c, "speedup": t_py / t_c if t_c else float("inf")})
    if args.json:
        print(json.dumps({"python": platform.python_version(), "rows": rows}, indent=2))
        return 0
    print(f"{'kernel':8} {'workload':28} {'cands':>6} {'python':>10} {'cython':>10} {'speedup':>8}")
    for r in rows:
        print(f"{r['kernel']:8} {r['workload']:28} {r['candidates']:>6} {r['python_s'] * 1e3:>8.1f}ms "
              f"{r['cython_s'] * 1e3:>8.2f}ms {r['speedup']:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
