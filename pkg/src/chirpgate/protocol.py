"""Closed-form dynamics of the chirped-pulse qubit drive.

The drive is ``H(t) = eta * [J_x + (nu t) / sqrt(1 - (nu t)^2) J_z]`` on
``|nu t| < 1``.  Everything below depends only on the ratio ``x = eta / nu``
and the dimensionless time ``s = nu t``.  Propagators for ``nu > 0`` come
from the gauge-frame solution; ``nu < 0`` is reached through the
``sigma_x`` flip of the Hamiltonian.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from chirpgate import su2
from chirpgate.su2 import Unitary2, X_AXIS, Y_AXIS, Z_AXIS


class DomainError(ValueError):
    """Argument lies outside the pulse window or the formula's domain."""


@dataclass(frozen=True)
class PulseParams:
    eta: float
    nu: float

    def __post_init__(self):
        if self.nu == 0 or not np.isfinite(self.nu):
            raise DomainError(f"sweep frequency must be finite and nonzero, got {self.nu!r}")
        if not np.isfinite(self.eta):
            raise DomainError(f"amplitude must be finite, got {self.eta!r}")

    @property
    def x(self) -> float:
        return self.eta / self.nu

    @property
    def phi(self) -> float:
        return mixing_angle(self.eta, self.nu)

    @classmethod
    def from_ratio(cls, x: float, nu: float = 1.0) -> "PulseParams":
        return cls(x * nu, nu)


@dataclass(frozen=True)
class CutoffSpec:
    """Truncation of the pulse at ``t = +-tau`` with ``delta = Omega_x / Omega_z(tau)``."""

    delta: float = 0.0

    def __post_init__(self):
        if not self.delta >= 0 or not np.isfinite(self.delta):
            raise DomainError(f"cutoff ratio must be finite and >= 0, got {self.delta!r}")

    @classmethod
    def from_window(cls, s_tau: float) -> "CutoffSpec":
        """Cutoff for the symmetric window ``|nu t| <= s_tau``."""
        if not 0 < s_tau <= 1:
            raise DomainError(f"window half-width nu*tau must lie in (0, 1], got {s_tau!r}")
        return cls(float(np.sqrt(max(1.0 / s_tau ** 2 - 1.0, 0.0))))

    @property
    def s_tau(self) -> float:
        return 1.0 / np.sqrt(1.0 + self.delta ** 2)

    @property
    def arccot(self) -> float:
        # branch with arccot(0) = pi/2 so the truncated phase is continuous at delta = 0
        return np.pi / 2 - np.arctan(self.delta)


IDEAL = CutoffSpec(0.0)


@dataclass(frozen=True)
class PhaseValue:
    theta_total: float

    def __float__(self):
        return self.theta_total


class Flip(enum.Enum):
    NEGATE_NU = "negate_nu"
    NEGATE_BOTH = "negate_both"


def mixing_angle(eta, nu=1.0):
    """``arccos(eta / sqrt(eta^2 + nu^2))`` in [0, pi]; accepts arrays."""
    return np.arccos(np.asarray(eta) / np.hypot(eta, nu))


def full_phase(x):
    """Phase accumulated over the whole window, ``(pi/2) sqrt(1 + x^2)``."""
    return np.pi / 2 * np.sqrt(1.0 + np.square(x))


def truncated_phase(x, c: CutoffSpec):
    return np.sqrt(1.0 + np.square(x)) * c.arccot


def _scaled_time(t, p: PulseParams, closed: bool) -> float:
    s = p.nu * t
    if closed and abs(s) > 1 or not closed and abs(s) >= 1:
        bound = "<=" if closed else "<"
        raise DomainError(f"need |nu t| {bound} 1, got nu*t = {s!r}")
    return s


def field_components(t: float, p: PulseParams) -> tuple[float, float]:
    """``(Omega_x, Omega_z)`` at time ``t``; diverges at the window ends."""
    s = _scaled_time(t, p, closed=False)
    return p.eta, p.eta * s / np.sqrt(1.0 - s * s)


def gauge_angle_theta(t: float, p: PulseParams) -> float:
    return -np.arccos(_scaled_time(t, p, closed=True))


def total_phase(t0: float, t: float, p: PulseParams) -> PhaseValue:
    """Phase accumulated in the gauge frame between ``t0`` and ``t``."""
    if t < t0:
        raise DomainError(f"need t0 <= t, got t0={t0!r}, t={t!r}")
    a = abs(p.nu)
    s0, s1 = a * t0, a * t
    if abs(s0) > 1 or abs(s1) > 1:
        raise DomainError(f"times must lie in the pulse window, got |nu|t0={s0!r}, |nu|t={s1!r}")
    return PhaseValue(0.5 * np.sqrt(1.0 + p.x ** 2) * (np.arcsin(s1) - np.arcsin(s0)))


def nonadiabatic_axis(x: float) -> np.ndarray:
    """Unit axis of ``J(phi) = sin(phi) J_y + cos(phi) J_z``."""
    phi = mixing_angle(x)
    return np.array([0.0, np.sin(phi), np.cos(phi)])


def nonadiabatic_factor(x: float, c: CutoffSpec = IDEAL) -> Unitary2:
    """``exp(-i 2 Theta_delta(x) J(phi))``; the nonadiabatic transition."""
    return su2.from_axis_angle(nonadiabatic_axis(x), -truncated_phase(x, c))


def ideal_propagator(x: float) -> Unitary2:
    """Full-window propagator for ``nu > 0``, built factor by factor.

    ``exp(i phi J_x) exp(-i 2 Theta_0 J_z) exp(-i phi J_x) exp(i pi J_y)``
    """
    phi = mixing_angle(x)
    return su2.product(
        su2.from_axis_angle(X_AXIS, phi / 2),
        su2.from_axis_angle(Z_AXIS, -full_phase(x)),
        su2.from_axis_angle(X_AXIS, -phi / 2),
        su2.from_axis_angle(Y_AXIS, np.pi / 2),
    )


def ideal_bloch(x):
    """Closed-form quaternion components of the ideal propagator.

    Returns ``(r0, rx, ry, rz)``; broadcasts over array ``x``.  The vector
    part always lies in the xy-plane.
    """
    th = full_phase(x)
    phi = mixing_angle(x)
    return (
        np.sin(th) * np.sin(phi),
        -np.sin(th) * np.cos(phi),
        np.cos(th),
        np.zeros_like(th),
    )


def truncated_propagator(x: float, c: CutoffSpec) -> Unitary2:
    """Propagator over ``(-tau, tau)``; equals :func:`ideal_propagator` at ``delta = 0``."""
    at = np.arctan(c.delta)
    return su2.product(
        su2.from_axis_angle(Y_AXIS, -at / 2),
        nonadiabatic_factor(x, c),
        su2.from_axis_angle(Y_AXIS, (np.pi - at) / 2),
    )


def _gauge(s: float, phi: float) -> Unitary2:
    """``G = exp(i theta J_y) exp(i phi J_x)`` at scaled time ``s``."""
    theta = -np.arccos(s)
    return su2.compose(
        su2.from_axis_angle(Y_AXIS, theta / 2),
        su2.from_axis_angle(X_AXIS, phi / 2),
    )


def windowed_propagator(t0: float, tf: float, p: PulseParams) -> Unitary2:
    """Propagator from ``t0`` to ``tf`` inside the open pulse window."""
    if p.nu < 0:
        return su2.pauli_conjugate("x", windowed_propagator(t0, tf, PulseParams(p.eta, -p.nu)))
    s0 = _scaled_time(t0, p, closed=False)
    s1 = _scaled_time(tf, p, closed=False)
    if s1 < s0:
        raise DomainError(f"need t0 <= tf, got t0={t0!r}, tf={tf!r}")
    phi = p.phi
    theta = total_phase(t0, tf, p).theta_total
    return su2.product(
        _gauge(s1, phi),
        su2.from_axis_angle(Z_AXIS, -theta),
        su2.dagger(_gauge(s0, phi)),
    )


def nonadiabatic_energies(t: float, p: PulseParams) -> tuple[float, float]:
    """``E_+-(t) = -+(eta/2) cos(phi) csc(theta(t))``, taken literally.

    For ``eta, nu > 0`` the gauge angle lies in ``(-pi, 0)`` so ``csc`` is
    negative and ``E_+`` is the upper level.
    """
    s = _scaled_time(t, p, closed=False)
    theta = -np.arccos(s)
    csc = 1.0 / np.sin(theta)
    e = 0.5 * p.eta * np.cos(p.phi) * csc
    return -e, e


def adiabatic_energies(t: float, p: PulseParams) -> tuple[float, float]:
    """Instantaneous eigenvalues ``+-|Omega(t)|/2`` of the Hamiltonian."""
    ox, oz = field_components(t, p)
    half = 0.5 * np.hypot(ox, oz)
    return half, -half


def symmetry_image(p: PulseParams, flip: Flip) -> Unitary2:
    """Full-window propagator after flipping the sign of ``nu`` or of both fields.

    ``p`` describes the unflipped pulse and must have ``nu > 0``.
    """
    if p.nu < 0:
        raise DomainError("symmetry images are taken of a nu > 0 pulse")
    u0 = ideal_propagator(p.x)
    if flip is Flip.NEGATE_NU:
        return su2.pauli_conjugate("x", u0)
    if flip is Flip.NEGATE_BOTH:
        return su2.dagger(u0)
    raise ValueError(f"unknown flip {flip!r}")


def pulse_propagator(p: PulseParams, c: CutoffSpec = IDEAL) -> Unitary2:
    """Propagator of an arbitrary-sign pulse over its (possibly truncated) window."""
    if p.nu > 0:
        return truncated_propagator(p.x, c)
    return su2.pauli_conjugate("x", truncated_propagator(-p.x, c))
