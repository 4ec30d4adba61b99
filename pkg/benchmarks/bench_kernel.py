"""Compiled vs pure-Python canonical search.

    python3 benchmarks/bench_kernel.py [--repeat N]

Runs both kernels over every enumerated flow code (disk, cylinder, pants
up to 7 points, each code also reversed), checks that they agree and
prints timings.  ``--full`` also times a cold enumeration of the disk flows
at 7 points in a subprocess per kernel (MORSEFLOW_PURE=1 selects
the fallback).
"""
import argparse
import os
import subprocess
import sys
import time

from morseflow import _kernel_py
from morseflow.enumeration import morse_codes, reversed_code

try:
    from morseflow import _kernel
except ImportError:
    _kernel = None


def corpus():
    out = []
    for holes, hi in ((1, 7), (2, 7), (3, 7)):
        for n in range(2, hi + 1):
            for c in morse_codes(holes, n):
                out += [c, reversed_code(c)]
    return out


def run(mod, codes, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        res = [mod.canonical_search(c, True) for c in codes]
        best = min(best, time.perf_counter() - t)
    return best, res


ENUM = ("import time; t = time.perf_counter();"
        "from morseflow.enumeration import morse_codes; morse_codes(1, 7);"
        "print(time.perf_counter() - t)")


def enum_time(pure):
    env = dict(os.environ, MORSEFLOW_THREADS="1", MORSEFLOW_PURE="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", ENUM], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--full", action="store_true")
    a = ap.parse_args()
    codes = corpus()
    print(f"{len(codes)} codes")
    tp, rp = run(_kernel_py, codes, a.repeat)
    print(f"pure     {tp * 1e3:8.1f} ms")
    if _kernel is None:
        print("compiled kernel not built")
        return
    tc, rc = run(_kernel, codes, a.repeat)
    assert [k for k, _ in rp] == [k for k, _ in rc], "kernels disagree"
    print(f"compiled {tc * 1e3:8.1f} ms   speedup x{tp / tc:.1f}")
    if a.full:
        ep, ec = enum_time(True), enum_time(False)
        print(f"enumeration, disk 7 points: pure {ep:.2f} s, compiled {ec:.2f} s, x{ep / ec:.1f}")


if __name__ == "__main__":
    main()
