#!/usr/bin/env python3
"""Nonadiabatic and adiabatic levels across the pulse, for several x."""
import argparse
import sys

from chirpgate import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x", type=float, nargs="+", default=[0.5, 1.0, 3.0])
    ap.add_argument("--n-points", type=int, default=201)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    a = ap.parse_args()
    for x in a.x:
        res = cli.cmd_energies(x, a.n_points)
        i = min(range(len(res.rows)), key=lambda k: abs(res.rows[k][0]))
        _, ep, em, ap_, am = res.rows[i]
        print(f"x={x:g}: gap at t=0 nonadiabatic {abs(ep - em):.12f}, adiabatic {ap_ - am:.12f}",
              file=sys.stderr)
        sys.stdout.write(res.render(a.format))


if __name__ == "__main__":
    main()
