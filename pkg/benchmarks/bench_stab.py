#!/usr/bin/env python3
"""Benchmark the S_n stabilizer-scan backends against each other.

The scan over all n! permutations is the hot numeric loop of the package;
this script times the numba kernel against the pure-numpy fallback (and the
pruned pure-python reference) on the order-9 worked example and on random
configurations.  Run directly:

    python benchmarks/bench_stab.py [--nmax 9] [--trials 3]
"""

import argparse
import random
import time
from fractions import Fraction

from toricgit.stab_backends import HAS_NUMBA, search_stabilizer
from toricgit.stabilizers import (CycleConfiguration, PointRecord, UnitValue,
                                  project_to_quotient, random_configuration)


def order9_example():
    pts = []
    for comp, gen, lbl in [(1, (1, 0, 0), "a"), (1, (0, 1, 0), "b"), (2, (0, 0, 1), "c")]:
        for j in range(3):
            pts.append(PointRecord(component=comp,
                                   position=UnitValue(root=Fraction(j, 3), generic=gen),
                                   a1_label=lbl, multiplicity=1))
    return CycleConfiguration(n=9, I_t=(1, 7, 10), points=tuple(pts))


def bench(enc, backend, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = search_stabilizer(enc, backend=backend)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=9)
    ap.add_argument("--trials", type=int, default=3)
    args = ap.parse_args()

    backends = ["python", "numpy"] + (["numba"] if HAS_NUMBA else [])
    if not HAS_NUMBA:
        print("numba not importable; benchmarking the numpy fallback only")

    enc = project_to_quotient(order9_example()).encode()
    if args.nmax >= 9:
        print("== order-9 worked example (9! = 362880 permutations) ==")
        ref = None
        for be in backends:
            dt, res = bench(enc, be, args.trials)
            ref = res if ref is None else ref
            assert res == ref, "backends disagree"
            print(f"  {be:7s}: {dt * 1000:9.1f} ms   ({len(res)} stabilizing permutations)")

    rng = random.Random(20240901)
    for n in range(6, min(args.nmax, 8) + 1):
        cfg = random_configuration(n, rng)
        enc = project_to_quotient(cfg).encode()
        print(f"== random stable configuration, n={n} ==")
        ref = None
        for be in backends:
            dt, res = bench(enc, be, args.trials)
            ref = res if ref is None else ref
            assert res == ref, "backends disagree"
            print(f"  {be:7s}: {dt * 1000:9.1f} ms   ({len(res)} stabilizing permutations)")


if __name__ == "__main__":
    main()
