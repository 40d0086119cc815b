#!/usr/bin/env python3
"""Timing comparison of the compiled scan kernel against the pure-Python one.

Both kernels (vfk._scan, vfk._scan_py) expose the same three entry points
over the same flattened tables; this script feeds identical inputs to both,
checks the outputs agree, and reports best-of-N wall times.

    python3 benchmarks/bench_scan.py [--repeat N]
"""
import argparse
import gc
import random
import sys
import time
from pathlib import Path

from vfk import _scan_py
from vfk.scankernel import Oracle, flatten, tabulate_oracle
from vfk.vfpres import load_presentation, normal_form

try:
    from vfk import _scan
except ImportError:
    _scan = None

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def table(name):
    p = load_presentation(SAMPLES / f"{name}.json")
    return p, flatten(p._scan)


def scan_workload(name, count, length):
    p, t = table(name)
    rng = random.Random(7)
    words = [[rng.randrange(t.m) for _ in range(length)] for _ in range(count)]

    def run(mod):
        out = [mod.scan(t.push_off, t.push_flat, t.next_rep, t.partner, w) for w in words]
        return [(list(s), r) for s, r in out]

    return f"scan         {name:5} {count} words x {length}", run


def agree_workload(name, depth):
    p, t = table(name)

    def step(s, c):
        return normal_form(p, s + (p.sigma[c],)).as_word()

    o_next, o_acc = tabulate_oracle(Oracle((), step, lambda s: s == ()), t.m, depth)

    def run(mod):
        return mod.agree_words(
            t.push_off, t.push_flat, t.next_rep, t.partner, t.m, depth, o_next, o_acc
        )

    return f"agree_words  {name:5} all words, depth {depth}", run


def ball_workload(name, radius):
    p, t = table(name)

    def run(mod):
        return mod.ball(
            t.push_off, t.push_flat, t.next_rep, t.partner, t.m, radius, 2_000_000
        )

    return f"ball         {name:5} radius {radius}", run


def best_of(run, mod, repeat):
    best, out = None, None
    for _ in range(repeat):
        # big results from a previous run must not stay alive here: the GC
        # walking a million live tuples mid-timing skews small allocations
        out = None
        gc.collect()
        t0 = time.perf_counter()
        out = run(mod)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best-of-N timing (default 3)")
    args = ap.parse_args(argv)

    if _scan is None:
        print("compiled kernel not built (vfk._scan missing); nothing to compare")
        return 1
    print(f"kernels: {_scan.kernel_kind()} vs {_scan_py.kernel_kind()}, best of {args.repeat}\n")

    workloads = [
        scan_workload("dinf", 2000, 48),
        scan_workload("z2z3", 2000, 48),
        agree_workload("dinf", 10),
        agree_workload("z2z3", 4),
        ball_workload("f2", 9),
        ball_workload("z2z3", 6),
    ]

    mismatch = False
    print(f"{'workload':40} {'compiled':>10} {'python':>10} {'speedup':>9}")
    for label, run in workloads:
        t_c, out_c = best_of(run, _scan, args.repeat)
        t_p, out_p = best_of(run, _scan_py, args.repeat)
        ok = out_c == out_p
        mismatch = mismatch or not ok
        note = "" if ok else "   OUTPUT MISMATCH"
        print(f"{label:40} {t_c:9.4f}s {t_p:9.4f}s {t_p / t_c:8.1f}x{note}")
        del out_c, out_p

    if mismatch:
        print("\nkernel outputs disagree", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
