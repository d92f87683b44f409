import numpy as np
import pytest
from hypothesis import given

from chirpgate import protocol, su2
from chirpgate.su2 import IDENTITY, Unitary2, X_AXIS, Y_AXIS, Z_AXIS

from conftest import SX, SY, SZ, I2, bloch_from_matrix, random_unit, random_unitary, unitaries

I_SIGMA_Y = Unitary2(0.0, (0.0, 1.0, 0.0))


def test_matrix_view_matches_pauli_expansion(rng):
    for _ in range(20):
        u = random_unitary(rng)
        m = u.r0 * I2 + 1j * (u.r[0] * SX + u.r[1] * SY + u.r[2] * SZ)
        assert np.allclose(u.matrix, m, atol=1e-15)
        assert abs(np.linalg.det(u.matrix) - 1) < 1e-12
        assert np.allclose(u.matrix.conj().T @ u.matrix, I2, atol=1e-12)


def test_from_matrix_round_trip(rng):
    for _ in range(20):
        u = random_unitary(rng)
        assert Unitary2.from_matrix(u.matrix).allclose(u, 1e-15)


def test_constructor_rejects_non_unit():
    with pytest.raises(ValueError):
        Unitary2(1.0, (0.1, 0.0, 0.0))


@pytest.mark.parametrize("axis, a, r0, r", [
    (Y_AXIS, np.pi / 2, 0.0, (0, 1, 0)),
    (Z_AXIS, 0.0, 1.0, (0, 0, 0)),
    (X_AXIS, np.pi / 4, np.sqrt(2) / 2, (np.sqrt(2) / 2, 0, 0)),
])
def test_from_axis_angle_examples(axis, a, r0, r):
    u = su2.from_axis_angle(axis, a)
    assert u.allclose(Unitary2(r0, r), 1e-15)


def test_from_axis_angle_is_exp_of_spin(rng):
    from scipy.linalg import expm
    for _ in range(10):
        n = random_unit(rng)
        a = rng.uniform(-4, 4)
        J = (n[0] * SX + n[1] * SY + n[2] * SZ) / 2
        assert np.allclose(su2.from_axis_angle(n, a / 2).matrix, expm(1j * a * J), atol=1e-13)


def test_from_axis_angle_rejects_non_unit_axis():
    with pytest.raises(ValueError):
        su2.from_axis_angle([1.0, 1.0, 0.0], 0.3)


def test_compose_examples():
    u = protocol.ideal_propagator(np.sqrt(3))
    assert su2.compose(u, u).allclose(Unitary2(-1.0, (0, 0, 0)), 1e-12)
    assert su2.compose(u, IDENTITY) == u


def test_compose_matches_matrix_product(rng):
    worst = 0.0
    for _ in range(100):
        a, b = random_unitary(rng), random_unitary(rng)
        worst = max(worst, np.abs(su2.compose(a, b).matrix - a.matrix @ b.matrix).max())
    assert worst < 1e-12


def test_compose_planar_case_matches_short_form(rng):
    # both factors without z-component: vector part of the cross term is pure z
    for _ in range(20):
        a = Unitary2.from_quaternion(np.r_[rng.normal(size=3), 0.0] / 1.0)
        b = Unitary2.from_quaternion(np.r_[rng.normal(size=3), 0.0])
        r0, rx, ry = b.r0, b.r[0], b.r[1]
        p0, px, py = a.r0, a.r[0], a.r[1]
        expect = (p0 * r0 - px * rx - py * ry, r0 * px + p0 * rx, r0 * py + p0 * ry, rx * py - px * ry)
        assert np.allclose(su2.compose(a, b).quaternion, expect, atol=1e-14)


def test_dagger_examples():
    assert su2.dagger(IDENTITY) == IDENTITY
    assert su2.dagger(I_SIGMA_Y).allclose(Unitary2(0.0, (0, -1, 0)))
    u = protocol.ideal_propagator(1.0)
    assert su2.compose(u, su2.dagger(u)).allclose(IDENTITY, 1e-12)


def test_conjugate_bloch_examples():
    assert np.allclose(su2.conjugate_bloch(IDENTITY, Z_AXIS), Z_AXIS)
    assert np.allclose(su2.conjugate_bloch(I_SIGMA_Y, Z_AXIS), -Z_AXIS, atol=1e-15)


def test_conjugate_bloch_matches_matrix_conjugation(rng):
    worst = 0.0
    for _ in range(100):
        a = random_unitary(rng)
        v = rng.normal(size=3)
        m = a.matrix @ (v[0] * SX + v[1] * SY + v[2] * SZ) @ a.matrix.conj().T
        worst = max(worst, np.abs(su2.conjugate_bloch(a, v) - bloch_from_matrix(m)).max())
    assert worst < 1e-12


def test_gate_fidelity_examples(rng):
    a = random_unitary(rng)
    assert su2.gate_fidelity(a, a) == pytest.approx(1.0, abs=1e-15)
    assert su2.gate_fidelity(IDENTITY, I_SIGMA_Y) == 0.0
    # truncation at Omega_z/Omega_x = 30 costs an error of order 1e-3
    u0 = protocol.ideal_propagator(np.sqrt(3))
    ud = protocol.truncated_propagator(np.sqrt(3), protocol.CutoffSpec(1 / 30))
    assert 1e-4 < 1 - su2.gate_fidelity(u0, ud) < 1e-2


def test_gate_fidelity_is_trace_formula(rng):
    for _ in range(20):
        a, b = random_unitary(rng), random_unitary(rng)
        A, B = a.matrix, b.matrix
        tr = np.trace(A.conj().T @ B + B.conj().T @ A) / 4
        assert abs(tr.imag) < 1e-15
        assert su2.gate_fidelity(a, b) == pytest.approx(tr.real, abs=1e-14)


@pytest.mark.parametrize("k, s", [("x", SX), ("y", SY), ("z", SZ)])
def test_pauli_conjugate(rng, k, s):
    a = random_unitary(rng)
    assert np.allclose(su2.pauli_conjugate(k, a).matrix, s @ a.matrix @ s, atol=1e-14)


# -- properties ---------------------------------------------------------------

@given(unitaries(), unitaries())
def test_closure_preserves_norm(a, b):
    assert abs(su2.compose(a, b).norm2 - 1) < 1e-12
    assert abs(su2.dagger(a).norm2 - 1) < 1e-12


@given(unitaries(), unitaries(), unitaries())
def test_associativity(a, b, c):
    lhs = su2.compose(su2.compose(a, b), c)
    rhs = su2.compose(a, su2.compose(b, c))
    assert lhs.allclose(rhs, 1e-12)


@given(unitaries())
def test_dagger_is_inverse(a):
    assert su2.compose(a, su2.dagger(a)).allclose(IDENTITY, 1e-12)


@given(unitaries())
def test_conjugation_is_orthogonal(a):
    rng = np.random.default_rng(0)
    v, w = rng.normal(size=3), rng.normal(size=3)
    cv, cw = su2.conjugate_bloch(a, v), su2.conjugate_bloch(a, w)
    assert np.linalg.norm(cv) == pytest.approx(np.linalg.norm(v), abs=1e-12)
    assert cv @ cw == pytest.approx(v @ w, abs=1e-12)


@given(unitaries(), unitaries(), unitaries())
def test_fidelity_symmetric_and_invariant(a, b, g):
    f = su2.gate_fidelity(a, b)
    assert -1 - 1e-12 <= f <= 1 + 1e-12
    assert f == pytest.approx(su2.gate_fidelity(b, a), abs=1e-14)
    assert f == pytest.approx(su2.gate_fidelity(su2.compose(g, a), su2.compose(g, b)), abs=1e-12)
    assert f == pytest.approx(su2.gate_fidelity(su2.compose(a, g), su2.compose(b, g)), abs=1e-12)


def test_long_products_stay_normalised(rng):
    u = IDENTITY
    for _ in range(10_000):
        u = su2.compose(random_unitary(rng), u)
    assert abs(u.norm2 - 1) < 1e-12
