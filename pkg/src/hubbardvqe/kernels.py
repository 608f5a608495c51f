"""Hot statevector kernels, JIT-compiled with a pure-numpy fallback.

Every kernel exists twice: a numba @njit version and a numpy version with
identical semantics.  The numba path is used when numba imports cleanly
and the environment variable HUBBARDVQE_NO_NUMBA is unset; setting it to
1/true/yes forces the numpy path.  benchmarks/bench_kernels.py compares
the two.

Basis convention: qubit q is bit q of the amplitude index.  A two-qubit
gate on targets (qa, qb) acts on the local basis |b_qa b_qb> ordered
00, 01, 10, 11 with b_qa the high bit.
"""

from __future__ import annotations

import os

import numpy as np

GIVENS = 0
HOP = 1
MOD_HOP = 2
ONSITE = 3
FSWAP = 4
U_NP = 5

GATE_NAMES = {GIVENS: "givens", HOP: "hop", MOD_HOP: "mod_hop",
              ONSITE: "onsite", FSWAP: "fswap", U_NP: "u_np"}
GATE_CODES = {name: code for code, name in GATE_NAMES.items()}

_NUMBA_DISABLED = os.environ.get("HUBBARDVQE_NO_NUMBA", "").strip().lower() in (
    "1", "true", "yes", "on",
)

try:
    if _NUMBA_DISABLED:
        raise ImportError("numba disabled via HUBBARDVQE_NO_NUMBA")
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False


def gate_matrix(kind: int, a: float = 0.0, b: float = 0.0) -> np.ndarray:
    """4x4 matrix of a library gate; (a, b) are its angle parameters.

    givens(a):  real rotation by a/2 in the single-excitation block.
    hop(a):     exp(i (a/2) (XX+YY)/2); identity corners.
    mod_hop(a, b): hop block with e^{+ib/2} phases on the first row and
                e^{-ib/2} on the second.
    onsite(a):  diag(1, 1, 1, e^{ia}).
    fswap:      occupation swap with a -1 on double occupancy.
    u_np(a, b): full-angle number-preserving rotation with e^{ib} on |11>.
    """
    u = np.zeros((4, 4), dtype=np.complex128)
    if kind == GIVENS:
        c, s = np.cos(a / 2), np.sin(a / 2)
        u[0, 0] = u[3, 3] = 1.0
        u[1, 1] = c
        u[1, 2] = -s
        u[2, 1] = s
        u[2, 2] = c
    elif kind == HOP:
        c, s = np.cos(a / 2), np.sin(a / 2)
        u[0, 0] = u[3, 3] = 1.0
        u[1, 1] = c
        u[1, 2] = 1j * s
        u[2, 1] = 1j * s
        u[2, 2] = c
    elif kind == MOD_HOP:
        c, s = np.cos(a / 2), np.sin(a / 2)
        plus = np.exp(1j * b / 2)
        minus = np.exp(-1j * b / 2)
        u[0, 0] = u[3, 3] = 1.0
        u[1, 1] = plus * c
        u[1, 2] = 1j * plus * s
        u[2, 1] = 1j * minus * s
        u[2, 2] = minus * c
    elif kind == ONSITE:
        u[0, 0] = u[1, 1] = u[2, 2] = 1.0
        u[3, 3] = np.exp(1j * a)
    elif kind == FSWAP:
        u[0, 0] = 1.0
        u[1, 2] = 1.0
        u[2, 1] = 1.0
        u[3, 3] = -1.0
    elif kind == U_NP:
        c, s = np.cos(a), np.sin(a)
        u[0, 0] = 1.0
        u[1, 1] = c
        u[1, 2] = 1j * s
        u[2, 1] = 1j * s
        u[2, 2] = c
        u[3, 3] = np.exp(1j * b)
    else:
        raise ValueError(f"unknown gate kind code {kind}")
    return u


def _block_indices(n_amps: int, qa: int, qb: int):
    idx = np.arange(n_amps)
    bit_a = 1 << qa
    bit_b = 1 << qb
    base = idx[(idx & bit_a == 0) & (idx & bit_b == 0)]
    return base, base | bit_b, base | bit_a, base | bit_a | bit_b


def apply_two_qubit_numpy(amps: np.ndarray, u: np.ndarray, qa: int, qb: int) -> None:
    """Apply a 4x4 unitary to qubits (qa, qb) of amps, in place."""
    i0, i1, i2, i3 = _block_indices(amps.size, qa, qb)
    a0, a1, a2, a3 = amps[i0], amps[i1], amps[i2], amps[i3]
    amps[i0] = u[0, 0] * a0 + u[0, 1] * a1 + u[0, 2] * a2 + u[0, 3] * a3
    amps[i1] = u[1, 0] * a0 + u[1, 1] * a1 + u[1, 2] * a2 + u[1, 3] * a3
    amps[i2] = u[2, 0] * a0 + u[2, 1] * a1 + u[2, 2] * a2 + u[2, 3] * a3
    amps[i3] = u[3, 0] * a0 + u[3, 1] * a1 + u[3, 2] * a2 + u[3, 3] * a3


def run_gate_program_numpy(
    amps: np.ndarray,
    kinds: np.ndarray,
    qas: np.ndarray,
    qbs: np.ndarray,
    p0: np.ndarray,
    p1: np.ndarray,
    params: np.ndarray,
) -> None:
    """Apply an encoded gate sequence to amps in place (numpy path)."""
    for t in range(kinds.size):
        a = params[p0[t]] if p0[t] >= 0 else 0.0
        b = params[p1[t]] if p1[t] >= 0 else 0.0
        apply_two_qubit_numpy(amps, gate_matrix(int(kinds[t]), a, b), int(qas[t]), int(qbs[t]))


def pauli_expectation_numpy(
    amps: np.ndarray,
    coeffs: np.ndarray,
    flips: np.ndarray,
    zys: np.ndarray,
    phases: np.ndarray,
) -> float:
    """<psi| sum_t c_t P_t |psi> for mask-encoded Pauli strings."""
    idx = np.arange(amps.size, dtype=np.int64)
    total = 0.0 + 0.0j
    for t in range(coeffs.size):
        v = idx & zys[t]
        v ^= v >> 32
        v ^= v >> 16
        v ^= v >> 8
        v ^= v >> 4
        v ^= v >> 2
        v ^= v >> 1
        signs = 1.0 - 2.0 * (v & 1)
        total += coeffs[t] * phases[t] * np.vdot(amps[idx ^ flips[t]], signs * amps)
    return float(total.real)


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _apply_two_qubit_jit(amps, u, qa, qb):  # pragma: no cover
        lo = qa if qa < qb else qb
        hi = qb if qa < qb else qa
        bit_a = 1 << qa
        bit_b = 1 << qb
        low_mask = (1 << lo) - 1
        mid_mask = (1 << (hi - lo - 1)) - 1
        for m in range(amps.size >> 2):
            low = m & low_mask
            mid = (m >> lo) & mid_mask
            high = m >> (hi - 1)
            i0 = (high << (hi + 1)) | (mid << (lo + 1)) | low
            i1 = i0 | bit_b
            i2 = i0 | bit_a
            i3 = i0 | bit_a | bit_b
            a0 = amps[i0]
            a1 = amps[i1]
            a2 = amps[i2]
            a3 = amps[i3]
            amps[i0] = u[0, 0] * a0 + u[0, 1] * a1 + u[0, 2] * a2 + u[0, 3] * a3
            amps[i1] = u[1, 0] * a0 + u[1, 1] * a1 + u[1, 2] * a2 + u[1, 3] * a3
            amps[i2] = u[2, 0] * a0 + u[2, 1] * a1 + u[2, 2] * a2 + u[2, 3] * a3
            amps[i3] = u[3, 0] * a0 + u[3, 1] * a1 + u[3, 2] * a2 + u[3, 3] * a3

    def apply_two_qubit_numba(amps, u, qa, qb):
        _apply_two_qubit_jit(amps, u, qa, qb)

    @njit(cache=True)
    def _fill_gate_matrix_jit(u, kind, a, b):  # pragma: no cover
        for r in range(4):
            for c in range(4):
                u[r, c] = 0.0
        if kind == GIVENS:
            c, s = np.cos(a / 2), np.sin(a / 2)
            u[0, 0] = 1.0
            u[3, 3] = 1.0
            u[1, 1] = c
            u[1, 2] = -s
            u[2, 1] = s
            u[2, 2] = c
        elif kind == HOP:
            c, s = np.cos(a / 2), np.sin(a / 2)
            u[0, 0] = 1.0
            u[3, 3] = 1.0
            u[1, 1] = c
            u[1, 2] = 1j * s
            u[2, 1] = 1j * s
            u[2, 2] = c
        elif kind == MOD_HOP:
            c, s = np.cos(a / 2), np.sin(a / 2)
            plus = np.cos(b / 2) + 1j * np.sin(b / 2)
            minus = np.cos(b / 2) - 1j * np.sin(b / 2)
            u[0, 0] = 1.0
            u[3, 3] = 1.0
            u[1, 1] = plus * c
            u[1, 2] = 1j * plus * s
            u[2, 1] = 1j * minus * s
            u[2, 2] = minus * c
        elif kind == ONSITE:
            u[0, 0] = 1.0
            u[1, 1] = 1.0
            u[2, 2] = 1.0
            u[3, 3] = np.cos(a) + 1j * np.sin(a)
        elif kind == FSWAP:
            u[0, 0] = 1.0
            u[1, 2] = 1.0
            u[2, 1] = 1.0
            u[3, 3] = -1.0
        else:  # U_NP
            c, s = np.cos(a), np.sin(a)
            u[0, 0] = 1.0
            u[1, 1] = c
            u[1, 2] = 1j * s
            u[2, 1] = 1j * s
            u[2, 2] = c
            u[3, 3] = np.cos(b) + 1j * np.sin(b)

    @njit(cache=True)
    def _run_gate_program_jit(amps, kinds, qas, qbs, p0, p1, params):  # pragma: no cover
        u = np.empty((4, 4), dtype=np.complex128)
        for t in range(kinds.size):
            a = params[p0[t]] if p0[t] >= 0 else 0.0
            b = params[p1[t]] if p1[t] >= 0 else 0.0
            _fill_gate_matrix_jit(u, kinds[t], a, b)
            _apply_two_qubit_jit(amps, u, qas[t], qbs[t])

    def run_gate_program_numba(amps, kinds, qas, qbs, p0, p1, params):
        _run_gate_program_jit(amps, kinds, qas, qbs, p0, p1, params)

    @njit(cache=True)
    def _pauli_expectation_jit(amps, coeffs, flips, zys, phases):  # pragma: no cover
        total = 0.0 + 0.0j
        for t in range(coeffs.size):
            flip = flips[t]
            zy = zys[t]
            acc = 0.0 + 0.0j
            for m in range(amps.size):
                v = m & zy
                v ^= v >> 32
                v ^= v >> 16
                v ^= v >> 8
                v ^= v >> 4
                v ^= v >> 2
                v ^= v >> 1
                if v & 1:
                    acc -= np.conj(amps[m ^ flip]) * amps[m]
                else:
                    acc += np.conj(amps[m ^ flip]) * amps[m]
            total += coeffs[t] * phases[t] * acc
        return total.real

    def pauli_expectation_numba(amps, coeffs, flips, zys, phases):
        return float(_pauli_expectation_jit(amps, coeffs, flips, zys, phases))

    BACKEND = "numba"
    apply_two_qubit = apply_two_qubit_numba
    run_gate_program = run_gate_program_numba
    pauli_expectation = pauli_expectation_numba
else:
    BACKEND = "numpy"
    apply_two_qubit = apply_two_qubit_numpy
    run_gate_program = run_gate_program_numpy
    pauli_expectation = pauli_expectation_numpy
