import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmrqip import gates, qstate
from nmrqip.pulse import PulseSpec, pulse_unitary, sequence_unitary
from nmrqip.qstate import (
    PROJ_1,
    SIGMA_Z,
    DensityMatrix,
    StateVector,
    apply,
    conjugate,
    crush,
    equal_up_to_global_phase,
    kron,
    populations,
)

from conftest import pulse_specs


def test_kron_identity():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_hadamards_entries():
    hh = kron(gates.HADAMARD_2, gates.HADAMARD_2)
    assert hh.shape == (4, 4)
    np.testing.assert_allclose(np.abs(hh), 0.5, atol=1e-15)


def test_kron_generator_matches_transition_rotation():
    g = kron(SIGMA_Z / 2, PROJ_1)
    np.testing.assert_allclose(np.diag(g), [0, 0.5, 0, -0.5])
    phi = 0.9
    expected = np.diag([1, np.exp(-1j * phi / 2), 1, np.exp(1j * phi / 2)])
    np.testing.assert_allclose(np.exp(-1j * phi * np.diag(g)), np.diag(expected))


def test_equal_up_to_global_phase_self():
    u = gates.qft_matrix(2)
    assert equal_up_to_global_phase(u, u) == (True, 0.0)


@pytest.mark.parametrize("phi", [0.3, 1.0, math.pi / 2, 2.5])
def test_rz_is_phase_gate_up_to_phase(phi):
    rz = pulse_unitary(PulseSpec("z", phi, 1, "*"))
    ok, theta = equal_up_to_global_phase(rz, gates.conditional_phase("1", phi))
    assert ok
    assert theta == pytest.approx(-phi / 2, abs=1e-12)


def test_equal_up_to_global_phase_rejects_other_matrix():
    ok, _ = equal_up_to_global_phase(gates.conditional_phase("11", 0.4), gates.conditional_phase("10", 0.4))
    assert not ok


def test_equal_up_to_global_phase_dimension_mismatch():
    with pytest.raises(ValueError):
        equal_up_to_global_phase(np.eye(2), np.eye(4))


@given(st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi), st.integers(0, 2**32 - 1))
def test_equal_up_to_global_phase_is_equivalence(a, b, seed):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    u, _ = np.linalg.qr(z)
    v = np.exp(1j * a) * u
    w = np.exp(1j * b) * v
    assert equal_up_to_global_phase(u, u)[0]
    assert equal_up_to_global_phase(u, v)[0] and equal_up_to_global_phase(v, u)[0]
    assert equal_up_to_global_phase(v, w)[0] and equal_up_to_global_phase(u, w)[0]


def test_apply_identity():
    s = StateVector.basis("101")
    np.testing.assert_array_equal(apply(np.eye(8), s).amplitudes, s.amplitudes)


def test_apply_hadamard_all_gives_uniform():
    out = apply(gates.hadamard(3), StateVector.basis("000"))
    np.testing.assert_allclose(out.amplitudes, np.full(8, 1 / (2 * math.sqrt(2))), atol=1e-15)
    assert 1 / (2 * math.sqrt(2)) == pytest.approx(0.3535534, abs=1e-7)


def test_conjugate_diagonal_matches_column_populations(rng):
    z = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    u, _ = np.linalg.qr(z)
    rho = StateVector.basis("000").to_density()
    out = conjugate(u, rho)
    # brute force: apply to |000> and square
    psi = apply(u, StateVector.basis("000"))
    np.testing.assert_allclose(populations(out), np.abs(psi.amplitudes) ** 2, atol=1e-14)
    np.testing.assert_allclose(populations(out), np.abs(u[:, 0]) ** 2, atol=1e-14)


def test_apply_dimension_mismatch():
    with pytest.raises(ValueError):
        apply(np.eye(4), StateVector.basis("000"))


@settings(max_examples=1000, deadline=None)
@given(st.lists(pulse_specs(max_n=3), min_size=1, max_size=4), st.integers(0, 2**32 - 1))
def test_apply_preserves_norm_for_pulse_products(pulses, seed):
    n = pulses[0].n_qubits
    seq = [PulseSpec(p.axis, p.angle, min(p.active, n), (p.pattern * n)[:n]) for p in pulses]
    u = sequence_unitary(seq, n)
    assert qstate.is_unitary(u)
    rng = np.random.default_rng(seed)
    a = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    s = StateVector(a / np.linalg.norm(a))
    assert abs(apply(u, s).norm() - 1) <= 1e-12


def test_crush_diagonal_is_noop():
    rho = DensityMatrix(np.diag([0.5, 0.25, 0.25, 0.0]))
    np.testing.assert_array_equal(crush(rho).matrix, rho.matrix)


def test_crush_plus_state():
    plus = StateVector(np.array([1, 1]) / math.sqrt(2)).to_density()
    np.testing.assert_allclose(crush(plus).matrix, np.diag([0.5, 0.5]), atol=1e-15)


def test_crush_idempotent_trace_preserving_keeps_flag(rng):
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = z + z.conj().T
    dev = DensityMatrix(h - np.trace(h) / 4 * np.eye(4), deviation=True)
    once = crush(dev)
    assert once.deviation
    np.testing.assert_array_equal(crush(once).matrix, once.matrix)
    assert abs(once.trace() - dev.trace()) <= 1e-12
    assert once.is_valid()


def test_populations_maximally_mixed():
    np.testing.assert_allclose(populations(DensityMatrix.maximally_mixed(3)), np.full(8, 1 / 8))


def test_populations_grover_final_state():
    amps = np.full(8, -1.0)
    amps[6] = 11.0
    psi = StateVector(amps / (8 * math.sqrt(2)))
    pops = populations(psi.to_density())
    assert pops[6] == pytest.approx(121 / 128, abs=1e-15)
    assert pops.sum() == pytest.approx(1, abs=1e-15)


def test_populations_deviation():
    dev = DensityMatrix(np.diag([1, 0, 0, -1]), deviation=True)
    np.testing.assert_array_equal(populations(dev), [1, 0, 0, -1])
    assert dev.is_valid()


def test_density_validity_checks():
    assert StateVector.basis("01").to_density().is_valid()
    assert not DensityMatrix(np.diag([0.7, 0.7])).is_valid()
    assert not DensityMatrix(np.array([[0.5, 1], [0, 0.5]])).is_valid()


def test_basis_ordering_qubit1_most_significant():
    assert np.argmax(StateVector.basis("110").amplitudes) == 6
    assert np.argmax(StateVector.basis("001").amplitudes) == 1


@pytest.mark.parametrize(
    "obj",
    [
        StateVector.basis("10"),
        DensityMatrix(np.diag([1, 0, 0, -1]), deviation=True),
        StateVector(np.array([1, 1j]) / math.sqrt(2)).to_density(),
    ],
)
def test_json_round_trip(obj):
    back = qstate.from_json(qstate.to_json(obj))
    assert type(back) is type(obj)
    data = back.amplitudes if isinstance(obj, StateVector) else back.matrix
    ref = obj.amplitudes if isinstance(obj, StateVector) else obj.matrix
    np.testing.assert_array_equal(data, ref)
    if isinstance(obj, DensityMatrix):
        assert back.deviation == obj.deviation


def test_json_unitary_schema():
    d = qstate.to_dict(gates.hadamard(1))
    assert d["kind"] == "unitary" and d["n_qubits"] == 1
    assert set(d) == {"n_qubits", "kind", "re", "im"}
    np.testing.assert_allclose(qstate.from_dict(d), gates.hadamard(1))


def test_states_are_immutable():
    s = StateVector.basis("0")
    with pytest.raises(ValueError):
        s.amplitudes[0] = 2
