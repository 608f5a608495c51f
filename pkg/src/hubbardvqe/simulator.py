"""Ideal statevector simulator with the number-preserving gate library.

All gates are 4x4 unitaries acting on an arbitrary (not necessarily
adjacent) qubit pair.  Expectation values are exact; there is no shot
sampling or noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .hamiltonian import PauliSum

UNITARITY_TOL = 1e-12


@dataclass
class Statevector:
    """Dense complex amplitude vector over 2^n_qubits basis states."""

    n_qubits: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def copy(self) -> "Statevector":
        return Statevector(self.n_qubits, self.amplitudes.copy())


@dataclass(frozen=True)
class TwoQubitGate:
    """Named 4x4 unitary bound to a target qubit pair.

    The matrix is in the |b_qa b_qb> basis (00, 01, 10, 11) with the
    first target as the high bit.
    """

    name: str
    matrix: np.ndarray = field(repr=False)
    targets: tuple[int, int] = (0, 1)


def _make_gate(kind: int, targets: tuple[int, int], a: float = 0.0, b: float = 0.0) -> TwoQubitGate:
    return TwoQubitGate(kernels.GATE_NAMES[kind], kernels.gate_matrix(kind, a, b), targets)


def gate_givens(theta: float, targets: tuple[int, int] = (0, 1)) -> TwoQubitGate:
    """Real half-angle rotation in the single-excitation block."""
    return _make_gate(kernels.GIVENS, targets, theta)


def gate_hop(theta: float, targets: tuple[int, int] = (0, 1)) -> TwoQubitGate:
    """Hopping evolution: half-angle XX+YY rotation, identity corners."""
    return _make_gate(kernels.HOP, targets, theta)


def gate_mod_hop(theta: float, phi: float, targets: tuple[int, int] = (0, 1)) -> TwoQubitGate:
    """Hopping evolution with an extra controlled-phase degree of freedom."""
    return _make_gate(kernels.MOD_HOP, targets, theta, phi)


def gate_onsite(theta: float, targets: tuple[int, int] = (0, 1)) -> TwoQubitGate:
    """Double-occupancy phase diag(1, 1, 1, e^{i theta})."""
    return _make_gate(kernels.ONSITE, targets, theta)


def gate_fswap(targets: tuple[int, int] = (0, 1)) -> TwoQubitGate:
    """Fermionic swap: exchanges occupations, -1 on double occupancy."""
    return _make_gate(kernels.FSWAP, targets)


def gate_u_np(theta: float, phi: float, targets: tuple[int, int] = (0, 1)) -> TwoQubitGate:
    """Generalized number-preserving unitary (full-angle block, e^{i phi} corner)."""
    return _make_gate(kernels.U_NP, targets, theta, phi)


def init_occupation_state(n_qubits: int, occupied) -> Statevector:
    """Computational basis state with 1s exactly at the occupied qubits."""
    occupied = list(occupied)
    if len(set(occupied)) != len(occupied):
        raise ValueError(f"duplicate qubit indices in {occupied}")
    index = 0
    for q in occupied:
        if not 0 <= q < n_qubits:
            raise ValueError(f"qubit {q} outside [0, {n_qubits})")
        index |= 1 << q
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return Statevector(n_qubits, amps)


def apply_gate(state: Statevector, gate: TwoQubitGate) -> Statevector:
    """Apply gate.matrix to gate.targets of the state, in place."""
    qa, qb = gate.targets
    if qa == qb:
        raise ValueError(f"gate targets must be distinct, got ({qa}, {qb})")
    if not (0 <= qa < state.n_qubits and 0 <= qb < state.n_qubits):
        raise ValueError(f"targets ({qa}, {qb}) outside [0, {state.n_qubits})")
    kernels.apply_two_qubit(state.amplitudes, gate.matrix, qa, qb)
    return state


def expectation(state: Statevector, hamiltonian) -> float:
    """<psi|H|psi> for a PauliSum or a dense Hermitian matrix."""
    if isinstance(hamiltonian, PauliSum):
        if hamiltonian.n_qubits != state.n_qubits:
            raise ValueError(
                f"operator on {hamiltonian.n_qubits} qubits, state has {state.n_qubits}"
            )
        return kernels.pauli_expectation(state.amplitudes, *hamiltonian.masks())
    matrix = np.asarray(hamiltonian)
    if matrix.shape != (state.amplitudes.size, state.amplitudes.size):
        raise ValueError(f"matrix shape {matrix.shape} does not match {state.amplitudes.size} amplitudes")
    return float(np.vdot(state.amplitudes, matrix @ state.amplitudes).real)


def overlap(a: Statevector, b: Statevector) -> complex:
    """<a|b> for two states on the same register."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))
