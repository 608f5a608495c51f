import numpy as np
import pytest
from scipy.linalg import expm

from hubbardvqe.exactdiag import exact_spectrum
from hubbardvqe.hamiltonian import (
    PauliSum,
    build_hubbard,
    hubbard_pauli_sum,
    sector_matrix,
    to_dense,
)
from hubbardvqe.lattice import build_geometry
from hubbardvqe.simulator import (
    apply_gate,
    expectation,
    gate_fswap,
    gate_givens,
    gate_hop,
    gate_mod_hop,
    gate_onsite,
    gate_u_np,
    init_occupation_state,
    overlap,
)

ALL_GATES = [
    lambda a, b: gate_givens(a),
    lambda a, b: gate_hop(a),
    lambda a, b: gate_mod_hop(a, b),
    lambda a, b: gate_onsite(a),
    lambda a, b: gate_fswap(),
    lambda a, b: gate_u_np(a, b),
]


def basis_state(n_qubits, index):
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return amps


def test_init_occupation_states():
    assert np.allclose(init_occupation_state(2, set()).amplitudes, basis_state(2, 0))
    assert np.allclose(init_occupation_state(2, {0, 1}).amplitudes, basis_state(2, 3))
    half_filled = init_occupation_state(8, {0, 1, 4, 5})
    assert np.allclose(half_filled.amplitudes, basis_state(8, 0b00110011))


def test_init_occupation_rejects_bad_indices():
    with pytest.raises(ValueError):
        init_occupation_state(2, [0, 0])
    with pytest.raises(ValueError):
        init_occupation_state(2, {2})


def test_gates_unitary_and_number_preserving():
    rng = np.random.default_rng(0)
    for make in ALL_GATES:
        for _ in range(25):
            u = make(rng.uniform(-2 * np.pi, 2 * np.pi), rng.uniform(-2 * np.pi, 2 * np.pi)).matrix
            assert np.abs(u @ u.conj().T - np.eye(4)).max() <= 1e-12
            # block diagonal over local occupation number {0}, {1}, {2}
            for row, col in [(0, 1), (0, 2), (0, 3), (3, 1), (3, 2), (3, 0)]:
                assert abs(u[row, col]) == 0.0
                assert abs(u[col, row]) == 0.0


def test_givens_examples():
    assert np.allclose(gate_givens(0.0).matrix, np.eye(4))
    # theta = pi swaps |01> -> |10> (half-angle pi/2 rotation)
    state = init_occupation_state(2, {0})
    apply_gate(state, gate_givens(np.pi, targets=(0, 1)))
    assert np.allclose(np.abs(state.amplitudes), np.abs(basis_state(2, 0b10)))
    # theta = pi/2 splits with cos/sin of pi/4
    state = init_occupation_state(2, {0})
    apply_gate(state, gate_givens(np.pi / 2, targets=(0, 1)))
    probs = np.abs(state.amplitudes) ** 2
    assert probs[0b01] == pytest.approx(np.cos(np.pi / 4) ** 2, abs=1e-12)
    assert probs[0b10] == pytest.approx(np.sin(np.pi / 4) ** 2, abs=1e-12)


def test_hop_examples():
    assert np.allclose(gate_hop(0.0).matrix, np.eye(4))
    state = init_occupation_state(2, {0})
    apply_gate(state, gate_hop(np.pi, targets=(0, 1)))
    assert state.amplitudes[0b10] == pytest.approx(1j, abs=1e-12)
    vacuum = init_occupation_state(2, set())
    apply_gate(vacuum, gate_hop(1.3, targets=(0, 1)))
    assert vacuum.amplitudes[0] == pytest.approx(1.0, abs=1e-12)


def test_hop_equals_matrix_exponential():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]])
    generator = (np.kron(x, x) + np.kron(y, y)) / 2
    for theta in (-2.0, 0.0, 0.7, np.pi, 4.0):
        expected = expm(1j * (theta / 2) * generator)
        assert np.abs(gate_hop(theta).matrix - expected).max() <= 1e-10


def test_mod_hop_examples():
    assert np.allclose(gate_mod_hop(0.0, 0.0).matrix, np.eye(4))
    # phi = 2 pi: the e^{+-i phi/2} phases become -1 on the excitation block
    u = gate_mod_hop(0.0, 2 * np.pi).matrix
    assert u[1, 1] == pytest.approx(-1.0, abs=1e-12)
    assert u[2, 2] == pytest.approx(-1.0, abs=1e-12)
    assert u[0, 0] == 1.0 and u[3, 3] == 1.0
    assert np.allclose(gate_mod_hop(0.0, 4 * np.pi).matrix, np.eye(4), atol=1e-12)
    # theta = pi, phi = 0: swap with +-i phases
    u = gate_mod_hop(np.pi, 0.0).matrix
    assert abs(u[1, 1]) <= 1e-12
    assert abs(abs(u[1, 2]) - 1.0) <= 1e-12
    assert u[1, 2] / 1j == pytest.approx(np.sin(np.pi / 2), abs=1e-12)


def test_mod_hop_reduces_to_hop_at_zero_phi():
    for theta in (0.3, 1.1, -2.0):
        assert np.abs(gate_mod_hop(theta, 0.0).matrix - gate_hop(theta).matrix).max() <= 1e-12


def test_onsite_examples():
    assert np.allclose(gate_onsite(0.0).matrix, np.eye(4))
    state = init_occupation_state(2, {0, 1})
    apply_gate(state, gate_onsite(np.pi, targets=(0, 1)))
    assert state.amplitudes[0b11] == pytest.approx(-1.0, abs=1e-12)
    single = init_occupation_state(2, {0})
    apply_gate(single, gate_onsite(2.1, targets=(0, 1)))
    assert single.amplitudes[0b01] == pytest.approx(1.0, abs=1e-12)


def test_fswap_examples():
    u = gate_fswap().matrix
    assert np.allclose(u @ u, np.eye(4))
    state = init_occupation_state(2, {0, 1})
    apply_gate(state, gate_fswap(targets=(0, 1)))
    assert state.amplitudes[0b11] == pytest.approx(-1.0, abs=1e-12)
    state = init_occupation_state(2, {0})
    apply_gate(state, gate_fswap(targets=(0, 1)))
    assert state.amplitudes[0b10] == pytest.approx(1.0, abs=1e-12)


def test_u_np_examples():
    assert np.allclose(gate_u_np(0.0, 0.0).matrix, np.eye(4))
    state = init_occupation_state(2, {0})
    apply_gate(state, gate_u_np(np.pi / 2, 0.0, targets=(0, 1)))
    assert state.amplitudes[0b10] == pytest.approx(1j, abs=1e-12)
    doubly = init_occupation_state(2, {0, 1})
    apply_gate(doubly, gate_u_np(0.7, np.pi, targets=(0, 1)))
    assert doubly.amplitudes[0b11] == pytest.approx(-1.0, abs=1e-12)


def test_apply_gate_identity_and_nonadjacent():
    state = init_occupation_state(3, {0})
    before = state.amplitudes.copy()
    apply_gate(state, gate_hop(0.0, targets=(0, 2)))
    assert np.allclose(state.amplitudes, before)
    # hop(pi) on (0, 2) of |001>: qubit 0 hops to qubit 2 with phase i
    apply_gate(state, gate_hop(np.pi, targets=(0, 2)))
    assert state.amplitudes[0b100] == pytest.approx(1j, abs=1e-12)


def test_apply_gate_rejects_equal_targets():
    state = init_occupation_state(2, set())
    with pytest.raises(ValueError):
        apply_gate(state, gate_hop(1.0, targets=(1, 1)))


def test_apply_gate_preserves_norm_random_sequence():
    rng = np.random.default_rng(12)
    state = init_occupation_state(5, {0, 3})
    for _ in range(1000):
        make = ALL_GATES[rng.integers(0, len(ALL_GATES))]
        qa, qb = rng.choice(5, size=2, replace=False)
        gate = make(rng.uniform(-np.pi, np.pi), rng.uniform(-np.pi, np.pi))
        apply_gate(state, type(gate)(gate.name, gate.matrix, (int(qa), int(qb))))
    assert abs(state.norm() - 1.0) <= 1e-12


def test_expectation_single_z():
    state = init_occupation_state(1, set())
    psum = PauliSum(1, [(1.0, "Z")]).canonicalize()
    assert expectation(state, psum) == pytest.approx(1.0, abs=1e-12)


def test_expectation_doubly_occupied_site():
    # both orbitals of one 2-site-lattice site occupied: energy = U
    g = build_geometry(1, 2)
    psum = hubbard_pauli_sum(g, 4.0)
    state = init_occupation_state(4, {0, 2})  # site 0 up and down orbitals
    assert expectation(state, psum) == pytest.approx(4.0, abs=1e-10)


def test_expectation_eigenvector_roundtrip():
    g = build_geometry(1, 3)
    psum = hubbard_pauli_sum(g, 2.0)
    basis, block = sector_matrix(build_hubbard(g, 2.0), g, 2, 1)
    eigenvalues, vectors = np.linalg.eigh(block)
    amps = np.zeros(1 << g.n_qubits, dtype=np.complex128)
    amps[basis.states] = vectors[:, 0]
    state = init_occupation_state(g.n_qubits, set())
    state.amplitudes = amps
    assert expectation(state, psum) == pytest.approx(eigenvalues[0], abs=1e-10)
    assert exact_spectrum(g, 2.0, 2, 1).energies[0] == pytest.approx(
        eigenvalues[0], abs=1e-10
    )


def test_expectation_value_within_spectrum_bounds():
    g = build_geometry(1, 3)
    psum = hubbard_pauli_sum(g, 3.0)
    dense = to_dense(psum)
    eigenvalues = np.linalg.eigvalsh(dense)
    rng = np.random.default_rng(5)
    for _ in range(10):
        amps = rng.normal(size=1 << g.n_qubits) + 1j * rng.normal(size=1 << g.n_qubits)
        amps /= np.linalg.norm(amps)
        state = init_occupation_state(g.n_qubits, set())
        state.amplitudes = amps
        value = expectation(state, psum)
        assert eigenvalues[0] - 1e-10 <= value <= eigenvalues[-1] + 1e-10
        assert value == pytest.approx(expectation(state, dense), abs=1e-10)


def test_expectation_dimension_mismatch():
    state = init_occupation_state(2, set())
    with pytest.raises(ValueError):
        expectation(state, PauliSum(3, [(1.0, "ZII")]).canonicalize())
    with pytest.raises(ValueError):
        expectation(state, np.eye(8))


def test_overlap_examples():
    state = init_occupation_state(3, {1})
    assert overlap(state, state) == pytest.approx(1.0 + 0j, abs=1e-12)
    a = init_occupation_state(2, set())
    b = init_occupation_state(2, {0, 1})
    assert overlap(a, b) == 0.0
    psi = init_occupation_state(2, {0})
    rotated = psi.copy()
    apply_gate(rotated, gate_givens(0.9, targets=(0, 1)))
    assert overlap(psi, rotated) == pytest.approx(np.cos(0.45), abs=1e-12)
    assert abs(overlap(psi, rotated)) <= 1 + 1e-10


def test_overlap_dimension_mismatch():
    with pytest.raises(ValueError):
        overlap(init_occupation_state(2, set()), init_occupation_state(3, set()))
