#!/usr/bin/env python3
"""Truncation error 1 - F(U0, U_delta) against the cutoff ratio 1/delta.

Writes CSV to stdout (or --out) and prints the smallest 1/delta that brings
each x below --threshold to stderr.
"""
import argparse
import math
import sys

import numpy as np
from scipy.optimize import brentq

from chirpgate import protocol, su2
from chirpgate.protocol import CutoffSpec
from chirpgate.results import SweepResult


def infidelity(x, delta):
    u0 = protocol.ideal_propagator(x)
    return 1 - su2.gate_fidelity(u0, protocol.truncated_propagator(x, CutoffSpec(delta)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x", type=float, nargs="+", default=[1.0, math.sqrt(3)])
    ap.add_argument("--inv-delta-max", type=float, default=100.0)
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--threshold", type=float, default=1e-3)
    ap.add_argument("--out", default="-")
    a = ap.parse_args()

    res = SweepResult(("inv_delta", "x", "infidelity"), metadata={"threshold": a.threshold})
    for inv in np.geomspace(1.0, a.inv_delta_max, a.steps):
        for x in a.x:
            res.add(float(inv), x, infidelity(x, 1 / inv))
    for x in a.x:
        f = lambda inv: infidelity(x, 1 / inv) - a.threshold
        if f(a.inv_delta_max) > 0:
            print(f"x={x:.6g}: threshold not reached by 1/delta={a.inv_delta_max:g}", file=sys.stderr)
        else:
            print(f"x={x:.6g}: 1 - F < {a.threshold:g} for 1/delta > {brentq(f, 1.0, a.inv_delta_max):.4f}",
                  file=sys.stderr)
    text = res.to_csv()
    if a.out == "-":
        sys.stdout.write(text)
    else:
        open(a.out, "w").write(text)


if __name__ == "__main__":
    main()
