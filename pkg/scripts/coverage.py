#!/usr/bin/env python3
"""Bloch-sphere coverage of the two-pulse surfaces and random-target alignment.

Coverage is the fraction of 1000 equal-area cells hit by the surface sampled on
an n x n grid of (x1, x2) in [-W, W]^2.  Random targets are drawn uniformly on
the sphere with --seed.
"""
import argparse
import time

import numpy as np

from chirpgate import synthesis as syn
from chirpgate.synthesis import Axis


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--half-widths", type=float, nargs="+", default=[1.0, 2.0, 3.0])
    ap.add_argument("--n-per-axis", type=int, default=121)
    ap.add_argument("--targets", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()

    print("axis,half_width,coverage")
    for axis in Axis:
        for w in a.half_widths:
            print(f"{axis.name},{w},{syn.sphere_coverage(axis, w, a.n_per_axis).fraction:.4f}")

    rng = np.random.default_rng(a.seed)
    t = rng.normal(size=(a.targets, 3))
    t /= np.linalg.norm(t, axis=1, keepdims=True)
    cfg = syn.SearchConfig(grid_half_width=max(a.half_widths), grid_points_per_axis=a.n_per_axis)
    for axis in Axis:
        t0, worst, fails = time.perf_counter(), 0.0, 0
        vec = syn.s_vector if axis is Axis.Y else syn.t_vector
        for target in t:
            try:
                worst = max(worst, 1 - float(vec(syn.align_axis(target, cfg, axis)) @ target))
            except syn.SearchError:
                fails += 1
        print(f"# {axis.name}: {a.targets} targets, {fails} failed, worst residual {worst:.2e}, "
              f"{time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
