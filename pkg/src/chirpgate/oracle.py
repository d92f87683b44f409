"""Brute-force check of the closed forms by integrating the Schrodinger equation.

Time is reparametrised as ``|nu| t = sin(u)``.  The generator then becomes
``(eta/|nu|) cos(u) J_x + (eta/nu) sin(u) J_z`` in ``u``, which is bounded,
so the full ideal window ``u in (-pi/2, pi/2)`` integrates without any
special handling.  Only Pauli matrices are used here; none of the
closed-form machinery is touched until :func:`verify_analytic` compares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp

from chirpgate import protocol, su2
from chirpgate.protocol import CutoffSpec, PulseParams
from chirpgate.su2 import Unitary2

_JX = su2.SIGMA_X / 2
_JZ = su2.SIGMA_Z / 2


class IntegrationError(RuntimeError):
    def __init__(self, msg, steps_taken=0, u_reached=None):
        super().__init__(msg)
        self.steps_taken = steps_taken
        self.u_reached = u_reached


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 200_000
    method: str = "dop853"  # or "rk4"
    rk4_steps: int | None = None  # None: derived from rel_tol

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")
        if self.method not in ("dop853", "rk4"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.rk4_steps is not None and self.rk4_steps <= 0:
            raise ValueError("rk4_steps must be positive")


@dataclass(frozen=True)
class IntegratedPropagator:
    unitary: Unitary2
    raw: np.ndarray
    unitarity_drift: float
    steps_taken: int


@dataclass(frozen=True)
class VerificationReport:
    x: float
    delta: float
    infidelity: float
    max_unitarity_drift: float
    steps_taken: int


def _generator(p: PulseParams):
    ax = p.eta / abs(p.nu)
    az = p.eta / p.nu

    def minus_i_h(u):
        return -1j * (ax * math.cos(u) * _JX + az * math.sin(u) * _JZ)

    return minus_i_h


def _rk4(gen, u0, u1, n):
    h = (u1 - u0) / n
    y = np.eye(2, dtype=complex)
    for k in range(n):
        u = u0 + k * h
        k1 = gen(u) @ y
        mid = gen(u + h / 2)
        k2 = mid @ (y + h / 2 * k1)
        k3 = mid @ (y + h / 2 * k2)
        k4 = gen(u + h) @ (y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def _rk4_step_count(amplitude, span, cfg):
    if cfg.rk4_steps is not None:
        return cfg.rk4_steps
    # global RK4 error ~ (|a| h)^4 * span; aim below rel_tol
    h = cfg.rel_tol ** 0.25 / max(1.0, amplitude)
    return max(8, math.ceil(span / h))


def _dop853(gen, u0, u1, cfg):
    calls = 0
    budget = 12 * cfg.max_steps  # DOP853 uses 12 rhs calls per step

    def rhs(u, y):
        nonlocal calls
        calls += 1
        if calls > budget:
            raise IntegrationError("step budget exhausted", calls // 12, u)
        return (gen(u) @ y.reshape(2, 2)).ravel()

    sol = solve_ivp(
        rhs, (u0, u1), np.eye(2, dtype=complex).ravel(), method="DOP853",
        rtol=cfg.rel_tol, atol=cfg.abs_tol,
    )
    if not sol.success:
        raise IntegrationError(sol.message, len(sol.t) - 1, sol.t[-1])
    return sol.y[:, -1].reshape(2, 2), len(sol.t) - 1


def integrate_pulse(p: PulseParams, c: CutoffSpec = protocol.IDEAL,
                    cfg: IntegratorConfig = IntegratorConfig()) -> IntegratedPropagator:
    """Time-ordered propagator of the pulse over ``(-tau, tau)``."""
    u1 = c.arccot  # sin(u1) = nu*tau
    u0 = -u1
    gen = _generator(p)
    if u1 == 0.0:
        raw, steps = np.eye(2, dtype=complex), 0
    elif cfg.method == "rk4":
        steps = _rk4_step_count(max(abs(p.eta / p.nu), 1.0), u1 - u0, cfg)
        if steps > cfg.max_steps:
            raise IntegrationError(f"fixed-step RK4 needs {steps} steps, budget {cfg.max_steps}", 0, u0)
        raw = _rk4(gen, u0, u1, steps)
    else:
        raw, steps = _dop853(gen, u0, u1, cfg)
    drift = float(np.abs(raw.conj().T @ raw - np.eye(2)).max())
    return IntegratedPropagator(Unitary2.from_matrix(raw), raw, drift, steps)


def integrate_propagator(x: float, c: CutoffSpec = protocol.IDEAL,
                         cfg: IntegratorConfig = IntegratorConfig()) -> Unitary2:
    """Integrated propagator for ratio ``x`` (``nu > 0``), projected onto SU(2)."""
    return integrate_pulse(PulseParams.from_ratio(x), c, cfg).unitary


def quadrature_phase(t0: float, t: float, p: PulseParams,
                     cfg: IntegratorConfig = IntegratorConfig()) -> float:
    """Numerical integral of the gauge-frame energy ``sqrt((eta^2+nu^2)/(1-(nu t)^2)) / 2``.

    Endpoints may sit on the window edge; the inverse-square-root
    singularity there is integrable and handled by adaptive extrapolation.
    """
    a = abs(p.nu)
    if t < t0 or a * t0 < -1 or a * t > 1:
        raise protocol.DomainError(f"need -1 <= |nu| t0 <= |nu| t <= 1, got {t0!r}, {t!r}")
    if t == t0:
        return 0.0
    scale = 0.5 * math.hypot(p.eta, p.nu)

    def integrand(tt):
        return scale / math.sqrt(1.0 - (a * tt) ** 2)

    value, err = quad(integrand, t0, t, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=500)
    if not err < max(cfg.abs_tol, cfg.rel_tol * abs(value)) * 100:
        raise IntegrationError(f"quadrature error estimate {err:.3e} too large")
    return value


def verify_analytic(x: float, c: CutoffSpec = protocol.IDEAL,
                    cfg: IntegratorConfig = IntegratorConfig()) -> VerificationReport:
    """Compare the integrated propagator against the closed form for one grid point."""
    res = integrate_pulse(PulseParams.from_ratio(x), c, cfg)
    if c.delta == 0:
        analytic = protocol.ideal_propagator(x)
    else:
        analytic = protocol.truncated_propagator(x, c)
    inf = 1.0 - su2.gate_fidelity(analytic, res.unitary)
    return VerificationReport(x, c.delta, inf, res.unitarity_drift, res.steps_taken)
