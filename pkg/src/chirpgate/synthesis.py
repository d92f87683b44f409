"""Single-qubit gates from sequences of ideal chirped pulses.

A pair of pulses ``R = U0(x2) U0(x1)`` is tuned so that it carries the
Bloch vector of a source pulse ``U0(xbar)`` onto the y or z axis.  The
sandwich ``R^dag U0(xbar) R`` is then a rotation about that axis whose
cosine of the half angle is the source's scalar part.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect, least_squares, minimize

from chirpgate import protocol, su2
from chirpgate.protocol import DomainError, PulseParams
from chirpgate.su2 import Unitary2, Y_AXIS, Z_AXIS

SQRT3 = math.sqrt(3.0)


class SearchError(RuntimeError):
    """No pulse pair reached the alignment tolerance."""

    def __init__(self, msg, best_residual, best_pair=None):
        super().__init__(msg)
        self.best_residual = best_residual
        self.best_pair = best_pair


class Axis(enum.Enum):
    Y = "Y"
    Z = "Z"

    @property
    def vector(self) -> np.ndarray:
        return Y_AXIS if self is Axis.Y else Z_AXIS


@dataclass(frozen=True)
class PulsePair:
    x1: float  # applied first
    x2: float


@dataclass(frozen=True)
class Pulse:
    """One full-window pulse of ratio ``x``; ``inverted`` means fields ``(-eta, -nu)``."""

    x: float
    inverted: bool = False

    def params(self, nu: float = 1.0) -> PulseParams:
        p = PulseParams.from_ratio(self.x, nu)
        return PulseParams(-p.eta, -p.nu) if self.inverted else p

    def propagator(self) -> Unitary2:
        p = PulseParams.from_ratio(self.x)
        if self.inverted:
            return protocol.symmetry_image(p, protocol.Flip.NEGATE_BOTH)
        return protocol.ideal_propagator(self.x)


@dataclass(frozen=True)
class PulseSequence:
    """Pulses in the order they are applied in time."""

    pulses: tuple[Pulse, ...] = ()
    n_blocks: int = 0

    def __len__(self):
        return len(self.pulses)


@dataclass(frozen=True)
class SearchConfig:
    grid_half_width: float = 3.0
    grid_points_per_axis: int = 121
    refine_tol: float = 1e-12
    max_refine_iters: int = 4000
    n_candidates: int = 8

    def __post_init__(self):
        if not (self.grid_half_width > 0 and self.grid_points_per_axis >= 2
                and self.refine_tol > 0 and self.max_refine_iters > 0 and self.n_candidates > 0):
            raise ValueError(f"invalid search configuration {self}")


# -- pair algebra -----------------------------------------------------------

def pair_components(x1, x2):
    """``(R0, Rx, Ry, Rz)`` of ``U0(x2) U0(x1)`` from the planar product rule.

    Both factors have zero z-component, which is what makes this short form
    exact.  Broadcasts over arrays.
    """
    r0, rx, ry, _ = protocol.ideal_bloch(x1)
    q0, qx, qy, _ = protocol.ideal_bloch(x2)
    return (
        q0 * r0 - qx * rx - qy * ry,
        r0 * qx + q0 * rx,
        r0 * qy + q0 * ry,
        rx * qy - qx * ry,
    )


def s_components(R0, Rx, Ry, Rz):
    return np.stack([
        2 * R0 * Rz + 2 * Rx * Ry,
        R0 ** 2 - Rx ** 2 + Ry ** 2 - Rz ** 2,
        -2 * R0 * Rx + 2 * Ry * Rz,
    ], axis=-1)


def t_components(R0, Rx, Ry, Rz):
    return np.stack([
        -2 * R0 * Ry + 2 * Rx * Rz,
        2 * R0 * Rx + 2 * Ry * Rz,
        R0 ** 2 - Rx ** 2 - Ry ** 2 + Rz ** 2,
    ], axis=-1)


def compose_pair(p: PulsePair) -> Unitary2:
    return su2.compose(protocol.ideal_propagator(p.x2), protocol.ideal_propagator(p.x1))


def s_vector(p: PulsePair) -> np.ndarray:
    """Image of the y axis under the pair, ``R sigma_y R^dag = S . sigma``."""
    return s_components(*pair_components(p.x1, p.x2))


def t_vector(p: PulsePair) -> np.ndarray:
    """Image of the z axis under the pair."""
    return t_components(*pair_components(p.x1, p.x2))


def surface(axis: Axis, x1, x2) -> np.ndarray:
    """S (axis Y) or T (axis Z) sampled on broadcast arrays ``x1, x2``."""
    fn = s_components if axis is Axis.Y else t_components
    return fn(*pair_components(x1, x2))


# -- search -----------------------------------------------------------------

def _bloch_scalar(x):
    th = math.pi / 2 * math.sqrt(1.0 + x * x)
    sin_phi = 1.0 / math.sqrt(1.0 + x * x)
    return math.sin(th) * sin_phi, -math.sin(th) * x * sin_phi, math.cos(th)


def _scalar_residual(axis, target):
    """``1 - V(x1, x2) . target`` in plain floats; the search hot loop."""
    tx, ty, tz = (float(c) for c in target)

    def residual(v):
        r0, rx, ry = _bloch_scalar(v[0])
        q0, qx, qy = _bloch_scalar(v[1])
        R0 = q0 * r0 - qx * rx - qy * ry
        Rx = r0 * qx + q0 * rx
        Ry = r0 * qy + q0 * ry
        Rz = rx * qy - qx * ry
        if axis is Axis.Y:
            dot = ((2 * R0 * Rz + 2 * Rx * Ry) * tx
                   + (R0 * R0 - Rx * Rx + Ry * Ry - Rz * Rz) * ty
                   + (-2 * R0 * Rx + 2 * Ry * Rz) * tz)
        else:
            dot = ((-2 * R0 * Ry + 2 * Rx * Rz) * tx
                   + (2 * R0 * Rx + 2 * Ry * Rz) * ty
                   + (R0 * R0 - Rx * Rx - Ry * Ry + Rz * Rz) * tz)
        return 1.0 - dot

    return residual


def _polish(axis, target, start):
    # 1 - V.t is quadratic in the direction error, so Nelder-Mead stalls near
    # 1e-8 in angle; the vector residual V - t is linear and polishes to rounding
    fn = lambda v: surface(axis, v[0], v[1]) - target
    if np.linalg.norm(fn(start)) < 1e-15:
        return start
    x = least_squares(fn, start, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15).x
    return x if np.linalg.norm(fn(x)) < np.linalg.norm(fn(start)) else start


def _grid_candidates(score, xs, k):
    # local maxima of the 8-neighbourhood first, best first; fall back to raw ranking
    pad = np.pad(score, 1, constant_values=-np.inf)
    n = score.shape[0]
    is_max = np.ones_like(score, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_max &= score >= pad[1 + di:1 + di + n, 1 + dj:1 + dj + n]
    idx = np.flatnonzero(is_max.ravel())
    idx = idx[np.argsort(-score.ravel()[idx], kind="stable")][:k]
    if idx.size == 0:
        idx = np.argsort(-score.ravel(), kind="stable")[:k]
    i, j = np.unravel_index(idx, score.shape)
    return [(xs[a], xs[b]) for a, b in zip(i, j)]


def align_axis(target, cfg: SearchConfig = SearchConfig(), axis: Axis = Axis.Y) -> PulsePair:
    """Find a pair whose image of ``axis`` is ``target``.

    ``axis=Y`` aligns the S surface, ``axis=Z`` the T surface.  Among all
    refined candidates within ``cfg.refine_tol`` the one with the smallest
    ``|x1| + |x2|`` wins.
    """
    target = np.asarray(target, dtype=float)
    if target.shape != (3,) or abs(np.linalg.norm(target) - 1) > 1e-9:
        raise ValueError("target must be a unit 3-vector")
    W = cfg.grid_half_width
    xs = np.linspace(-W, W, cfg.grid_points_per_axis)
    X1, X2 = np.meshgrid(xs, xs, indexing="ij")
    score = surface(axis, X1, X2) @ target

    residual = _scalar_residual(axis, target)

    solved = []
    best = (math.inf, None)
    for start in _grid_candidates(score, xs, cfg.n_candidates):
        if residual(start) < cfg.refine_tol:
            x = _polish(axis, target, np.array(start, dtype=float))
            solved.append(PulsePair(float(x[0]), float(x[1])))
        res = minimize(
            residual, np.array(start), method="Nelder-Mead",
            options={"xatol": 1e-9, "fatol": 1e-15, "maxiter": cfg.max_refine_iters,
                     "initial_simplex": np.array(start) + np.array([[0, 0], [0.05, 0], [0, 0.05]])},
        )
        x = res.x
        if residual(x) < 1e-6:
            x = _polish(axis, target, x)
        r = residual(x)
        if r < best[0]:
            best = (r, PulsePair(float(x[0]), float(x[1])))
        if r < cfg.refine_tol:
            solved.append(PulsePair(float(x[0]), float(x[1])))
    if not solved:
        raise SearchError(
            f"no pair within tolerance {cfg.refine_tol:g}; best residual {best[0]:.3e} "
            f"at half-width {W:g}", best[0], best[1])
    return min(solved, key=lambda p: (abs(p.x1) + abs(p.x2), p.x1, p.x2))


def source_scalar(x):
    """Scalar part ``sin(Theta0) sin(phi)`` of the source pulse ``U0(x)``."""
    return np.sin(protocol.full_phase(x)) / np.sqrt(1.0 + np.square(x))


def solve_phase_parameter(target_r0: float) -> float:
    """Ratio ``xbar`` in ``[0, sqrt 3]`` whose pulse has scalar part ``target_r0``."""
    if not 0 < target_r0 <= 1:
        raise DomainError(f"target scalar part must lie in (0, 1], got {target_r0!r}")
    if target_r0 == 1:
        return 0.0
    return bisect(lambda x: source_scalar(x) - target_r0, 0.0, SQRT3, xtol=1e-14, maxiter=200)


def half_angle(r0: float) -> float:
    """Angle read as ``arccos(r0)``; half the matrix rotation angle."""
    return math.acos(r0)


def rotation_angle(r0: float) -> float:
    """Matrix rotation angle ``phi`` of ``exp(i phi J)`` with scalar part ``r0``."""
    return 2 * math.acos(r0)


def _sandwich(pair: PulsePair, xbar: float) -> tuple[Pulse, ...]:
    # R^dag U0(xbar) R; R^dag is the two pulses inverted in reverse order
    return (
        Pulse(pair.x1), Pulse(pair.x2),
        Pulse(xbar),
        Pulse(pair.x2, inverted=True), Pulse(pair.x1, inverted=True),
    )


def synthesize_block(axis: Axis, phi: float, cfg: SearchConfig = SearchConfig()) -> tuple[Pulse, ...]:
    """One sandwich realising ``exp(i phi J_axis)`` for ``0 < |phi| < pi``."""
    if not 0 < abs(phi) < math.pi:
        raise DomainError(f"a single block realises 0 < |phi| < pi, got {phi!r}")
    xbar = solve_phase_parameter(math.cos(phi / 2))
    _, rx, ry, rz = protocol.ideal_bloch(xbar)
    rbar = np.array([rx, ry, rz])
    direction = math.copysign(1.0, phi) * rbar / np.linalg.norm(rbar)
    return _sandwich(align_axis(direction, cfg, axis), xbar)


def synthesize_gate(axis: Axis | str, phi: float, cfg: SearchConfig = SearchConfig()) -> PulseSequence:
    """Pulse sequence realising ``exp(i phi J_axis)`` for ``|phi| < 2 pi``.

    Rotations with ``|phi| >= pi/2`` are split into two equal blocks.
    """
    axis = Axis(axis) if isinstance(axis, str) else axis
    if not abs(phi) < 2 * math.pi:
        raise DomainError(f"phi must lie in (-2 pi, 2 pi), got {phi!r}")
    if phi == 0:
        return PulseSequence()
    n = 1 if abs(phi) < math.pi / 2 else 2
    block = synthesize_block(axis, phi / n, cfg)
    return PulseSequence(block * n, n)


def target_gate(axis: Axis | str, phi: float) -> Unitary2:
    axis = Axis(axis) if isinstance(axis, str) else axis
    return su2.from_axis_angle(axis.vector, phi / 2)


def evaluate_sequence(seq: PulseSequence | list[Pulse]) -> Unitary2:
    """Total propagator; each later pulse multiplies from the left."""
    pulses = seq.pulses if isinstance(seq, PulseSequence) else seq
    out = su2.IDENTITY
    for p in pulses:
        out = su2.compose(p.propagator(), out)
    return out


@dataclass
class CoverageResult:
    half_width: float
    n_per_axis: int
    fraction: float
    hits: np.ndarray = field(repr=False)


def equal_area_bins(v: np.ndarray, n_bands: int = 20, n_sectors: int = 50) -> np.ndarray:
    """Index of an equal-solid-angle sphere cell (bands uniform in z)."""
    z = np.clip(v[..., 2], -1, 1)
    band = np.minimum(((z + 1) / 2 * n_bands).astype(int), n_bands - 1)
    az = np.arctan2(v[..., 1], v[..., 0]) % (2 * np.pi)
    sector = np.minimum((az / (2 * np.pi) * n_sectors).astype(int), n_sectors - 1)
    return band * n_sectors + sector


def sphere_coverage(axis: Axis, half_width: float, n_per_axis: int = 121,
                    n_bands: int = 20, n_sectors: int = 50) -> CoverageResult:
    """Fraction of equal-area sphere cells hit by the sampled S or T surface."""
    xs = np.linspace(-half_width, half_width, n_per_axis)
    X1, X2 = np.meshgrid(xs, xs, indexing="ij")
    cells = equal_area_bins(surface(axis, X1, X2), n_bands, n_sectors)
    hits = np.zeros(n_bands * n_sectors, dtype=bool)
    hits[cells.ravel()] = True
    return CoverageResult(half_width, n_per_axis, float(hits.mean()), hits)
