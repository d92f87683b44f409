"""SU(2) algebra on unit quaternions.

An element is stored as ``U = r0*I + i*(r . sigma)`` with real ``r0`` and
real 3-vector ``r``.  Spin operators are ``J = sigma / 2`` throughout, so
``exp(i*a*J_n)`` is ``from_axis_angle(n, a / 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])

# Constructor rejects anything further than this from the unit sphere.
_NORM_TOL = 1e-9
# Products are renormalised once accumulated drift exceeds this.
_RENORM_TOL = 1e-13


@dataclass(frozen=True)
class Unitary2:
    r0: float
    r: tuple[float, float, float]

    def __post_init__(self):
        r = tuple(float(c) for c in self.r)
        if len(r) != 3:
            raise ValueError(f"vector part must have 3 components, got {len(r)}")
        object.__setattr__(self, "r0", float(self.r0))
        object.__setattr__(self, "r", r)
        drift = abs(self.norm2 - 1.0)
        if not np.isfinite(drift) or drift > _NORM_TOL:
            raise ValueError(f"not an SU(2) element: r0^2 + |r|^2 - 1 = {drift:.3e}")

    @classmethod
    def identity(cls) -> "Unitary2":
        return cls(1.0, (0.0, 0.0, 0.0))

    @classmethod
    def from_quaternion(cls, q) -> "Unitary2":
        """Build from ``(r0, rx, ry, rz)``, renormalising small drift."""
        q = np.asarray(q, dtype=float)
        n = np.sqrt(q @ q)
        if abs(n - 1.0) > _RENORM_TOL:
            q = q / n
        return cls(q[0], (q[1], q[2], q[3]))

    @classmethod
    def from_matrix(cls, m) -> "Unitary2":
        """Nearest SU(2) element to a 2x2 complex matrix.

        The four real quaternion components are read off the Pauli
        expansion and then normalised; the anti-linear remainder (non-SU(2)
        part) is discarded.
        """
        m = np.asarray(m, dtype=complex)
        q = np.array([
            (m[0, 0] + m[1, 1]).real / 2,
            (m[0, 1] + m[1, 0]).imag / 2,
            (m[0, 1] - m[1, 0]).real / 2,
            (m[0, 0] - m[1, 1]).imag / 2,
        ])
        n = np.sqrt(q @ q)
        if n == 0.0:
            raise ValueError("matrix has no SU(2) component")
        return cls.from_quaternion(q / n)

    @property
    def vec(self) -> np.ndarray:
        return np.array(self.r)

    @property
    def quaternion(self) -> np.ndarray:
        return np.array((self.r0, *self.r))

    @property
    def norm2(self) -> float:
        return self.r0 ** 2 + sum(c * c for c in self.r)

    @property
    def matrix(self) -> np.ndarray:
        rx, ry, rz = self.r
        return np.array([
            [self.r0 + 1j * rz, ry + 1j * rx],
            [-ry + 1j * rx, self.r0 - 1j * rz],
        ])

    def __matmul__(self, other: "Unitary2") -> "Unitary2":
        return compose(self, other)

    def __neg__(self) -> "Unitary2":
        return Unitary2(-self.r0, tuple(-c for c in self.r))

    def allclose(self, other: "Unitary2", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.quaternion, other.quaternion, rtol=0, atol=atol))


IDENTITY = Unitary2.identity()


def _check_axis(axis) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,):
        raise ValueError(f"axis must be a 3-vector, got shape {axis.shape}")
    if abs(np.linalg.norm(axis) - 1.0) > 1e-9:
        raise ValueError(f"axis must be a unit vector, |axis| = {np.linalg.norm(axis)!r}")
    return axis


def from_axis_angle(axis, half_angle: float) -> Unitary2:
    """Return ``cos(a) I + i sin(a) (axis . sigma)``, i.e. ``exp(i*2a*J_axis)``."""
    axis = _check_axis(axis)
    s = np.sin(half_angle)
    return Unitary2(np.cos(half_angle), tuple(s * axis))


def compose(a: Unitary2, b: Unitary2) -> Unitary2:
    """Matrix product ``a @ b`` as a quaternion product."""
    a0, av = a.r0, a.vec
    b0, bv = b.r0, b.vec
    q0 = a0 * b0 - av @ bv
    qv = a0 * bv + b0 * av - np.cross(av, bv)
    return Unitary2.from_quaternion((q0, *qv))


def dagger(a: Unitary2) -> Unitary2:
    return Unitary2(a.r0, tuple(-c for c in a.r))


def conjugate_bloch(a: Unitary2, v) -> np.ndarray:
    """Vector ``w`` with ``a (v . sigma) a^dagger = w . sigma``."""
    v = np.asarray(v, dtype=float)
    a0, av = a.r0, a.vec
    return (a0 * a0 - av @ av) * v + 2 * (av @ v) * av - 2 * a0 * np.cross(av, v)


def gate_fidelity(a: Unitary2, b: Unitary2) -> float:
    """``Tr[a^dag b + b^dag a] / 4``; phase-sensitive, in [-1, 1]."""
    return float(a.r0 * b.r0 + a.vec @ b.vec)


def pauli_conjugate(pauli: str, a: Unitary2) -> Unitary2:
    """``sigma_k a sigma_k`` for ``pauli`` in ``"xyz"``.

    Conjugating by sigma_k keeps r0 and r_k and flips the other two vector
    components.
    """
    k = "xyz".index(pauli)
    r = tuple(c if i == k else -c for i, c in enumerate(a.r))
    return Unitary2(a.r0, r)


def product(*factors: Unitary2) -> Unitary2:
    """Left-to-right matrix product of the factors."""
    out = IDENTITY
    for f in factors:
        out = compose(out, f)
    return out
