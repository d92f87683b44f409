"""``chirpgate`` command line: figure data, oracle runs and gate synthesis.

Exit codes: 0 success, 2 numerical or search failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import ast
import itertools
import json
import math
import operator
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

import numpy as np

from chirpgate import oracle, protocol, su2, synthesis
from chirpgate.protocol import CutoffSpec, PulseParams
from chirpgate.results import SweepResult

EXIT_OK = 0
EXIT_FAILURE = 2
EXIT_USAGE = 64

ENERGY_EDGE = 1e-6
VERIFY_TOL = 1e-9
DEFAULT_GRID = "x=0,0.5,1,sqrt(3),3;delta=0,1,0.1,1/30,0.01"


class UsageError(ValueError):
    pass


# -- parsing helpers --------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_NAMES = {"pi": math.pi}
_FUNCS = {"sqrt": math.sqrt}


def parse_number(text: str) -> float:
    """Evaluate a plain arithmetic literal such as ``-3*pi/4`` or ``1/30``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise UsageError(f"cannot parse number {text!r}")

    try:
        value = ev(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError, ValueError, OverflowError) as exc:
        raise UsageError(f"cannot parse number {text!r}") from exc
    if not math.isfinite(value):
        raise UsageError(f"number must be finite: {text!r}")
    return value


def parse_grid(spec: str) -> dict[str, list[float]]:
    """Parse ``"x=a,b,c;delta=d,e"`` into value lists."""
    out = {}
    for part in spec.split(";"):
        key, sep, vals = part.partition("=")
        key = key.strip()
        if not sep or key not in ("x", "delta") or key in out:
            raise UsageError(f"malformed grid spec {spec!r}")
        items = [v for v in vals.split(",")]
        if not items or any(not v.strip() for v in items):
            raise UsageError(f"empty value in grid spec {spec!r}")
        out[key] = [parse_number(v) for v in items]
    if set(out) != {"x", "delta"}:
        raise UsageError(f"grid spec needs both x and delta: {spec!r}")
    if any(d < 0 for d in out["delta"]):
        raise UsageError("cutoff ratios must be >= 0")
    return out


def _threads() -> int:
    try:
        n = int(os.environ.get("CHIRPGATE_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _pmap(fn, items):
    items = list(items)
    n = min(_threads(), len(items))
    if n <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))  # map keeps input order


def _meta(**params):
    return {"generated": datetime.now(timezone.utc).isoformat(timespec="seconds"), **params}


# -- commands ---------------------------------------------------------------

def cmd_energies(x: float, n_points: int) -> SweepResult:
    """Nonadiabatic and adiabatic levels in units of eta = 1, over nu t."""
    if n_points < 2:
        raise UsageError("n_points must be >= 2")
    if x == 0 or not math.isfinite(x):
        raise UsageError("x = eta/nu must be finite and nonzero")
    p = PulseParams(1.0, 1.0 / x)
    res = SweepResult(("s", "E_plus", "E_minus", "E_adiabatic_plus", "E_adiabatic_minus"),
                      metadata=_meta(command="energies", x=x, n_points=n_points, eta=1.0))
    # scaled grid stays exactly symmetric about s = 0
    for s in (1 - ENERGY_EDGE) * np.linspace(-1.0, 1.0, n_points):
        t = s / p.nu
        ep, em = protocol.nonadiabatic_energies(t, p)
        ap, am = protocol.adiabatic_energies(t, p)
        res.add(float(s), float(ep), float(em), float(ap), float(am))
    return res


def cmd_fidelity_sweep(x_list, delta_range) -> SweepResult:
    lo, hi, n = delta_range
    if not (0 < lo <= hi) or n < 1:
        raise UsageError("delta range needs 0 < min <= max and steps >= 1")
    deltas = np.geomspace(lo, hi, int(n))
    res = SweepResult(("inv_delta", "x", "F_full", "F_tilde"),
                      metadata=_meta(command="fidelity-sweep", x=list(x_list),
                                     delta_min=lo, delta_max=hi, delta_steps=int(n)))

    def row(args):
        x, d = args
        c = CutoffSpec(float(d))
        f_full = su2.gate_fidelity(protocol.ideal_propagator(x), protocol.truncated_propagator(x, c))
        f_tilde = su2.gate_fidelity(protocol.nonadiabatic_factor(x), protocol.nonadiabatic_factor(x, c))
        return 1.0 / float(d), float(x), f_full, f_tilde

    for r in _pmap(row, itertools.product(x_list, deltas)):
        res.add(*r)
    return res


def cmd_surfaces(mode: str, half_width: float, n_per_axis: int) -> SweepResult:
    if n_per_axis < 2:
        raise UsageError("n_per_axis must be >= 2")
    if not half_width > 0:
        raise UsageError("half_width must be positive")
    axis = synthesis.Axis.Y if mode == "S" else synthesis.Axis.Z
    xs = np.linspace(-half_width, half_width, n_per_axis)
    X1, X2 = np.meshgrid(xs, xs, indexing="ij")
    V = synthesis.surface(axis, X1, X2)
    cov = synthesis.sphere_coverage(axis, half_width, n_per_axis)
    res = SweepResult(("x1", "x2", "v_x", "v_y", "v_z"),
                      metadata=_meta(command="surfaces", mode=mode, half_width=half_width,
                                     n_per_axis=n_per_axis, coverage_fraction=cov.fraction))
    for i, j in itertools.product(range(n_per_axis), repeat=2):
        res.add(float(xs[i]), float(xs[j]), *map(float, V[i, j]))
    return res


def cmd_verify(grid_spec: str, cfg: oracle.IntegratorConfig = oracle.IntegratorConfig()) -> SweepResult:
    grid = parse_grid(grid_spec)
    res = SweepResult(("x", "delta", "infidelity", "drift", "steps"),
                      metadata=_meta(command="verify", grid=grid_spec, method=cfg.method,
                                     rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol))

    def row(args):
        x, d = args
        r = oracle.verify_analytic(x, CutoffSpec(d), cfg)
        return r.x, r.delta, r.infidelity, r.max_unitarity_drift, r.steps_taken

    for r in _pmap(row, itertools.product(grid["x"], grid["delta"])):
        res.add(*r)
    res.metadata["all_pass"] = all(v < VERIFY_TOL for v in res.column("infidelity"))
    return res


def cmd_synthesize(axis: str, phi: float, cfg: synthesis.SearchConfig = synthesis.SearchConfig()):
    """Synthesize ``exp(i phi J_axis)``; returns (sequence, report table)."""
    if not abs(phi) < 2 * math.pi:
        raise UsageError("phi must lie in (-2 pi, 2 pi)")
    seq = synthesis.synthesize_gate(axis, phi, cfg)
    got = synthesis.evaluate_sequence(seq)
    want = synthesis.target_gate(axis, phi)
    infidelity = 1.0 - su2.gate_fidelity(got, want)
    per_block = len(seq) // seq.n_blocks if seq.n_blocks else 0
    res = SweepResult(("index", "block", "x", "inverted"),
                      metadata=_meta(command="synthesize", axis=axis, phi=phi,
                                     n_blocks=seq.n_blocks, n_pulses=len(seq),
                                     evaluated=_matrix_json(got), target=_matrix_json(want),
                                     infidelity=infidelity))
    for k, p in enumerate(seq.pulses):
        res.add(k, k // per_block if per_block else 0, float(p.x), bool(p.inverted))
    return seq, res


def _matrix_json(u: su2.Unitary2):
    return [[[float(z.real), float(z.imag)] for z in row] for row in u.matrix]


# -- argument handling ------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(text):
    try:
        return parse_number(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="chirpgate", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default="-", help="output path (default stdout)")

    p = sub.add_parser("energies", help="level structure across the pulse window")
    p.add_argument("--x", type=_num, default=1.0, help="ratio eta/nu")
    p.add_argument("--n-points", type=int, default=401)
    common(p)

    p = sub.add_parser("fidelity-sweep", help="truncation fidelity versus cutoff ratio")
    p.add_argument("--x", type=_num, nargs="+", default=[1.0, math.sqrt(3)])
    p.add_argument("--delta-min", type=_num, default=1e-3)
    p.add_argument("--delta-max", type=_num, default=1.0)
    p.add_argument("--delta-steps", type=int, default=50)
    common(p)

    p = sub.add_parser("surfaces", help="S or T Bloch surfaces of a pulse pair")
    p.add_argument("--mode", choices=("S", "T"), default="S")
    p.add_argument("--half-width", type=_num, default=3.0)
    p.add_argument("--n-per-axis", type=int, default=121)
    common(p)

    p = sub.add_parser("synthesize", help="pulse sequence for exp(i phi J_axis)")
    p.add_argument("--axis", choices=("Y", "Z"), required=True)
    p.add_argument("--phi", type=_num, required=True, help="rotation angle, e.g. pi/3")
    p.add_argument("--half-width", type=_num, default=3.0)
    common(p)

    p = sub.add_parser("verify", help="closed forms against direct integration")
    p.add_argument("--grid", default=DEFAULT_GRID)
    p.add_argument("--method", choices=("dop853", "rk4"), default="dop853")
    common(p)
    return ap


def _emit(text: str, out: str):
    if out == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w") as fh:
            fh.write(text)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "energies":
            res, status = cmd_energies(args.x, args.n_points), EXIT_OK
        elif args.command == "fidelity-sweep":
            res = cmd_fidelity_sweep(args.x, (args.delta_min, args.delta_max, args.delta_steps))
            status = EXIT_OK
        elif args.command == "surfaces":
            res, status = cmd_surfaces(args.mode, args.half_width, args.n_per_axis), EXIT_OK
        elif args.command == "verify":
            res = cmd_verify(args.grid, oracle.IntegratorConfig(method=args.method))
            status = EXIT_OK if res.metadata["all_pass"] else EXIT_FAILURE
        else:
            cfg = synthesis.SearchConfig(grid_half_width=args.half_width)
            _, res = cmd_synthesize(args.axis, args.phi, cfg)
            status = EXIT_OK if res.metadata["infidelity"] < VERIFY_TOL else EXIT_FAILURE
    except UsageError as exc:
        print(f"chirpgate: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except synthesis.SearchError as exc:
        print(json.dumps({"error": "search failure", "message": str(exc),
                          "best_residual": exc.best_residual}), file=sys.stderr)
        return EXIT_FAILURE
    except oracle.IntegrationError as exc:
        print(f"chirpgate: integration failure: {exc} (steps {exc.steps_taken})", file=sys.stderr)
        return EXIT_FAILURE
    _emit(res.render(args.format), args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
