#!/usr/bin/env python3
"""Closed-form propagators against direct integration, for both integrators."""
import argparse
import sys
import time

from chirpgate import cli, oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", default=cli.DEFAULT_GRID)
    a = ap.parse_args()
    ok = True
    for method in ("dop853", "rk4"):
        t0 = time.perf_counter()
        res = cli.cmd_verify(a.grid, oracle.IntegratorConfig(method=method))
        worst = max(res.column("infidelity"))
        ok &= res.metadata["all_pass"]
        print(f"{method}: {len(res.rows)} points, max infidelity {worst:.2e}, "
              f"{time.perf_counter() - t0:.2f}s")
    sys.exit(0 if ok else 2)


if __name__ == "__main__":
    main()
