#!/usr/bin/env python3
"""Duality sweep over random monomial-ideal modules.

For each trial, draw a random monomial module over GF(101)[x,y]/(x^3,y^3),
build the twisted complex and its explicit dual, and compare every jump
variety and the Betti/Bass degrees.

Usage: python scripts/duality_sweep.py [--trials N] [--seed N]
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from jumploci import GF, PolyRing  # noqa: E402
from jumploci.resolution import (RingData, presentation_from_rows,  # noqa: E402
                                 resolve_over_a, dualize_over_a)
from jumploci.homotopy import (compute_higher_homotopies,  # noqa: E402
                               dualize_homotopies)
from jumploci.twisted import build_twisted_complex  # noqa: E402
from jumploci.loci import duality_check  # noqa: E402

from conftest import random_monomial_rows  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    A = PolyRing(GF(101), ("x", "y"))
    rd = RingData(A, [A.parse("x^3"), A.parse("y^3")])
    failures = 0
    for trial in range(args.trials):
        gens = random_monomial_rows(rng)
        pres = presentation_from_rows(A, [[A.monomial(m) for m in gens]])
        start = time.perf_counter()
        res = resolve_over_a(rd, pres)
        sys_ = compute_higher_homotopies(res, rd)
        X = build_twisted_complex(res, sys_, rd)
        dc = dualize_over_a(res)
        dual_sys = dualize_homotopies(sys_, dc, rd)
        X_dual = build_twisted_complex(dual_sys.resolution, dual_sys, rd,
                                       S=X.S)
        report = duality_check(X, X_dual)
        elapsed = time.perf_counter() - start
        label = "ok" if report.all_equal else "MISMATCH"
        if not report.all_equal:
            failures += 1
        names = ", ".join(str(A.monomial(m)) for m in gens)
        print(f"trial {trial}: coker [{names}] -> {label} "
              f"({elapsed:.2f} s)")
    print(f"{args.trials - failures}/{args.trials} agree")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
