#!/usr/bin/env python3
"""Per-size runtime survey of the determinant and solver machinery.

The cycle-sum determinants are factorial in n, which is the whole reason
the library caps matrix sizes; this script documents how the wall clock
grows so the cap and the test-suite sizes stay honest. Run it after any
change to the minor-sum kernels.

    python3 scripts/route_benchmark.py --max-size 5 --trials 3

Sizes above 5 are reachable with --max-size but the two-sided
solve at n = 6 already takes tens of seconds.
"""

import argparse
import random
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from quatmat import (  # noqa: E402
    RestrictedEquation,
    SolveOptions,
    ddet,
    det_hermitian,
    mp_inverse,
    solve,
)
from helpers import hermitian, rank_mat, rmat  # noqa: E402


@dataclass
class BenchConfig:
    max_size: int = 5
    trials: int = 3
    threads: int = 1
    seed: int = 0x5EED


def timed(fn, trials):
    samples = []
    for _ in range(trials):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def bench(cfg):
    rng = random.Random(cfg.seed)
    print("size  det_hermitian      ddet  mp_inverse  solve(AXB=D)")
    for n in range(1, cfg.max_size + 1):
        H = hermitian(rng, n)
        S = rmat(rng, n, n)
        R = rank_mat(rng, min(n + 1, cfg.max_size), n, max(n - 1, 1))
        t_det = timed(lambda: det_hermitian(H), cfg.trials)
        t_ddet = timed(lambda: ddet(S), cfg.trials)
        t_mp = timed(lambda: mp_inverse(R), cfg.trials)

        A = rank_mat(rng, n, n, n) if n > 1 else rmat(rng, 1, 1)
        B = rank_mat(rng, n, n, n) if n > 1 else rmat(rng, 1, 1)
        D = A @ rmat(rng, n, n) @ B
        eq = RestrictedEquation(kind="two_sided", A=A, B=B, D=D)
        t_solve = timed(
            lambda: solve(eq, SolveOptions(threads=cfg.threads)), cfg.trials
        )
        print("%4d  %11.4fs  %7.4fs  %9.4fs  %11.4fs"
              % (n, t_det, t_ddet, t_mp, t_solve))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=5)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=0x5EED)
    a = ap.parse_args(argv)
    bench(BenchConfig(max_size=a.max_size, trials=a.trials,
                      threads=a.threads, seed=a.seed))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
