#!/usr/bin/env python3
"""Bracket sharp mean-operator constants from both sides at a finite horizon.

Forward (p > 1): near-extremal power families give lower bounds on the
weighted-mean operator norm; the known constants cap it from above.
Reverse (0 < p < 1): the tail-mean ratio is minimized over families, which
upper-bounds the best constant (p-th root convention).

Usage:
    python scripts/norm_bracketing.py [--n-max 20000]
"""

import argparse

from hardylab.operators import (
    OperatorSpec,
    SequenceFamily,
    copson_tail,
    extremal_search,
)


def forward_rows(N: int):
    for p, alpha in ((1.25, 1.0), (2.0, 1.0), (3.0, 1.0), (2.0, 2.0)):
        op = OperatorSpec("weighted_mean", N, alpha=alpha)
        grid = [
            SequenceFamily("power_decay", N, 1.0 / p + eps)
            for eps in (1e-4, 1e-3, 1e-2, 5e-2, 1e-1)
        ]
        found = extremal_search(op, p, grid)
        cap = alpha * p / (alpha * p - 1.0)
        yield p, alpha, found.best_ratio, cap


def reverse_rows(N: int):
    for p in (0.25, 1.0 / 3.0):
        grid = [
            SequenceFamily("power_decay", N, 1.0 / p + eps)
            for eps in (1e-4, 1e-3, 1e-2, 5e-2)
        ]
        found = extremal_search(copson_tail(N), p, grid)
        floor = p / (1.0 - p)
        yield p, found.best_ratio, floor


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--n-max", type=int, default=20000)
    args = parser.parse_args()
    N = args.n_max

    print("forward weighted means: lower bracket vs known cap")
    print(f"{'p':>6} {'alpha':>6} {'family best':>12} {'cap':>9} {'gap':>9}")
    for p, alpha, best, cap in forward_rows(N):
        print(f"{p:6.2f} {alpha:6.2f} {best:12.6f} {cap:9.6f} {cap - best:9.6f}")

    print("\nreverse tail means: family minimum vs floor")
    print(f"{'p':>8} {'family min':>12} {'floor':>9} {'gap':>9}")
    for p, best, floor in reverse_rows(N):
        print(f"{p:8.4f} {best:12.6f} {floor:9.6f} {best - floor:9.6f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
