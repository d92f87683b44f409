import numpy as np
import pytest
from hypothesis import strategies as st
from scipy.linalg import expm

from chirpgate.su2 import Unitary2

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)
JX, JY, JZ = SX / 2, SY / 2, SZ / 2


def random_unitary(rng) -> Unitary2:
    q = rng.normal(size=4)
    return Unitary2.from_quaternion(q / np.linalg.norm(q))


def random_unit(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def bloch_from_matrix(m):
    """Pauli expansion coefficients of a traceless Hermitian 2x2 matrix."""
    return np.array([np.trace(m @ s).real / 2 for s in (SX, SY, SZ)])


def u0_by_expm(x):
    """Ideal propagator assembled from matrix exponentials only."""
    phi = np.arccos(x / np.sqrt(1 + x * x))
    th0 = np.pi / 2 * np.sqrt(1 + x * x)
    return expm(1j * phi * JX) @ expm(-2j * th0 * JZ) @ expm(-1j * phi * JX) @ expm(1j * np.pi * JY)


@st.composite
def unitaries(draw):
    q = np.array(draw(st.lists(st.floats(-1, 1), min_size=4, max_size=4)))
    n = np.linalg.norm(q)
    if n < 1e-3:
        q, n = np.array([1.0, 0, 0, 0]), 1.0
    return Unitary2.from_quaternion(q / n)


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LOG, key=lambda s: int(s.split()[1].rstrip("."))):
        terminalreporter.write_line(line)
