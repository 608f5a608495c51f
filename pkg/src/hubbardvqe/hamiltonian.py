"""Second-quantized Hubbard Hamiltonian and its qubit images.

Two deliberately independent materialization routes are provided and kept
as mutual oracles:

* the Pauli route: Jordan-Wigner each fermionic term into a PauliSum and
  densify with Kronecker products;
* the sector route: build the matrix directly in the fixed (n_up, n_down)
  occupation basis, applying fermionic signs to bitmasks.

Energies are in units of the hopping amplitude (t = 1), so the only
physical knob is U/t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .lattice import LatticeGeometry, bonds, qubit_index

HOPPING = "hopping"
ONSITE = "onsite"

DENSE_QUBIT_CAP = 14
COEFF_DROP_TOL = 1e-14


class TermError(ValueError):
    """Raised for malformed fermionic terms or unsupported parameters."""


@dataclass(frozen=True)
class FermionTerm:
    """One Hermitian term of the Hubbard Hamiltonian.

    hopping: coefficient * (a†_i a_j + a†_j a_i) on two same-spin orbitals.
    onsite:  coefficient * n_i n_j on the up/down orbitals of one site.
    """

    kind: str
    orbitals: tuple[int, int]
    coefficient: float


@dataclass
class PauliSum:
    """Real-coefficient sum of Pauli strings.

    Each string has one character in "IXYZ" per qubit, position q acting
    on qubit q.  Canonical form: strings sorted, duplicates merged,
    coefficients below COEFF_DROP_TOL removed.
    """

    n_qubits: int
    terms: list[tuple[float, str]] = field(default_factory=list)
    _masks: tuple | None = field(default=None, repr=False, compare=False)

    def canonicalize(self) -> "PauliSum":
        merged: dict[str, float] = {}
        for coeff, string in self.terms:
            if len(string) != self.n_qubits:
                raise TermError(f"pauli string {string!r} is not {self.n_qubits} characters")
            merged[string] = merged.get(string, 0.0) + coeff
        self.terms = sorted(
            ((c, s) for s, c in merged.items() if abs(c) > COEFF_DROP_TOL),
            key=lambda t: t[1],
        )
        self._masks = None
        return self

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise TermError("cannot add PauliSums on different qubit counts")
        return PauliSum(self.n_qubits, list(self.terms) + list(other.terms)).canonicalize()

    def dump(self) -> str:
        """Debug text, one 'coeff PAULI_STRING' line per term."""
        return "\n".join(f"{coeff:.12g} {string}" for coeff, string in self.terms)

    def masks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Bitmask encoding used by the expectation kernels (cached).

        Returns (coeffs, flip_masks, zy_masks, phases): P|m> =
        phase * (-1)^popcount(m & zy) |m ^ flip> with phase = i^{#Y}.
        """
        if self._masks is not None:
            return self._masks
        coeffs = np.empty(len(self.terms), dtype=np.float64)
        flips = np.zeros(len(self.terms), dtype=np.int64)
        zys = np.zeros(len(self.terms), dtype=np.int64)
        phases = np.empty(len(self.terms), dtype=np.complex128)
        for t, (coeff, string) in enumerate(self.terms):
            n_y = 0
            for q, op in enumerate(string):
                bit = 1 << q
                if op == "X":
                    flips[t] |= bit
                elif op == "Y":
                    flips[t] |= bit
                    zys[t] |= bit
                    n_y += 1
                elif op == "Z":
                    zys[t] |= bit
            coeffs[t] = coeff
            phases[t] = 1j ** (n_y % 4)
        self._masks = (coeffs, flips, zys, phases)
        return self._masks


@dataclass(frozen=True)
class SectorBasis:
    """Ascending bitmasks spanning a fixed (n_up, n_down) sector."""

    n_up: int
    n_down: int
    states: np.ndarray  # int64, sorted ascending

    @property
    def dim(self) -> int:
        return int(self.states.size)


def build_hubbard(geometry: LatticeGeometry, u_over_t: float) -> list[FermionTerm]:
    """Hubbard terms: -1 hopping per (bond, spin), U/t onsite per site."""
    if u_over_t < 0:
        raise TermError(f"attractive U (U/t = {u_over_t}) is not supported")
    terms = []
    for spin in ("up", "down"):
        for bond in bonds(geometry):
            orbitals = (
                qubit_index(geometry, bond.site_a, spin),
                qubit_index(geometry, bond.site_b, spin),
            )
            terms.append(FermionTerm(HOPPING, orbitals, -1.0))
    for site in range(geometry.n_sites):
        orbitals = (qubit_index(geometry, site, "up"), qubit_index(geometry, site, "down"))
        terms.append(FermionTerm(ONSITE, orbitals, float(u_over_t)))
    return terms


def jordan_wigner(term: FermionTerm, n_qubits: int) -> PauliSum:
    """Qubit image of one fermionic term.

    Hopping (i < j) maps to (c/2)(X_i X_j + Y_i Y_j) Z_{i+1} ... Z_{j-1};
    onsite n_i n_j maps to (c/4)(I - Z_i - Z_j + Z_i Z_j) through
    n = (I - Z)/2.
    """
    i, j = term.orbitals
    if max(i, j) >= n_qubits or min(i, j) < 0:
        raise TermError(f"orbital indices {term.orbitals} outside [0, {n_qubits})")
    c = term.coefficient
    if term.kind == HOPPING:
        if i == j:
            raise TermError("hopping term needs two distinct orbitals")
        lo, hi = min(i, j), max(i, j)
        xx = ["I"] * n_qubits
        yy = ["I"] * n_qubits
        xx[lo] = xx[hi] = "X"
        yy[lo] = yy[hi] = "Y"
        for q in range(lo + 1, hi):
            xx[q] = yy[q] = "Z"
        return PauliSum(n_qubits, [(0.5 * c, "".join(xx)), (0.5 * c, "".join(yy))]).canonicalize()
    if term.kind == ONSITE:
        identity = "I" * n_qubits
        zi = identity[:i] + "Z" + identity[i + 1 :]
        zj = identity[:j] + "Z" + identity[j + 1 :]
        lo, hi = min(i, j), max(i, j)
        zz = identity[:lo] + "Z" + identity[lo + 1 : hi] + "Z" + identity[hi + 1 :]
        return PauliSum(
            n_qubits,
            [(0.25 * c, identity), (-0.25 * c, zi), (-0.25 * c, zj), (0.25 * c, zz)],
        ).canonicalize()
    raise TermError(f"unknown term kind {term.kind!r}")


def hubbard_pauli_sum(geometry: LatticeGeometry, u_over_t: float) -> PauliSum:
    """Full Jordan-Wigner Hamiltonian of the lattice as one PauliSum."""
    total = PauliSum(geometry.n_qubits, [])
    for term in build_hubbard(geometry, u_over_t):
        total = total + jordan_wigner(term, geometry.n_qubits)
    return total


_PAULI_1Q = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def to_dense(psum: PauliSum, n_qubits: int | None = None) -> np.ndarray:
    """Densify a PauliSum into its 2^n x 2^n Hermitian matrix.

    Qubit q is the 2^q bit of the basis index, so the Kronecker product
    runs from the highest qubit down to qubit 0.
    """
    n = psum.n_qubits if n_qubits is None else n_qubits
    if n > DENSE_QUBIT_CAP:
        raise TermError(
            f"refusing to densify {n} qubits (cap {DENSE_QUBIT_CAP}); use sector_matrix instead"
        )
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=np.complex128)
    for coeff, string in psum.terms:
        factor = np.ones((1, 1), dtype=np.complex128)
        for q in range(n - 1, -1, -1):
            factor = np.kron(factor, _PAULI_1Q[string[q]])
        out += coeff * factor
    return out


def sector_basis(geometry: LatticeGeometry, n_up: int, n_down: int) -> SectorBasis:
    """Enumerate all bitmasks with fixed up/down occupation counts."""
    n_sites = geometry.n_sites
    if not (0 <= n_up <= n_sites and 0 <= n_down <= n_sites):
        raise TermError(f"occupations ({n_up}, {n_down}) invalid for {n_sites} sites")
    states = []
    for ups in itertools.combinations(range(n_sites), n_up):
        up_mask = sum(1 << q for q in ups)
        for downs in itertools.combinations(range(n_sites), n_down):
            down_mask = sum(1 << (n_sites + q) for q in downs)
            states.append(up_mask | down_mask)
    states.sort()
    return SectorBasis(n_up, n_down, np.asarray(states, dtype=np.int64))


def _jw_sign(mask: int, lo: int, hi: int) -> float:
    """(-1)^(occupied orbitals strictly between lo and hi) for a bitmask."""
    between = mask & (((1 << hi) - 1) ^ ((1 << (lo + 1)) - 1))
    return -1.0 if bin(between).count("1") % 2 else 1.0


def sector_matrix(
    terms: list[FermionTerm],
    geometry: LatticeGeometry,
    n_up: int,
    n_down: int,
) -> tuple[SectorBasis, np.ndarray]:
    """Real-symmetric Hamiltonian block in the occupation basis.

    Hopping moves one electron between orbitals with the Jordan-Wigner
    parity sign; onsite terms contribute to the diagonal only.
    """
    basis = sector_basis(geometry, n_up, n_down)
    index = {int(m): k for k, m in enumerate(basis.states)}
    h = np.zeros((basis.dim, basis.dim), dtype=np.float64)
    for term in terms:
        i, j = term.orbitals
        lo, hi = min(i, j), max(i, j)
        if term.kind == ONSITE:
            for k, mask in enumerate(basis.states):
                m = int(mask)
                if (m >> i) & 1 and (m >> j) & 1:
                    h[k, k] += term.coefficient
        elif term.kind == HOPPING:
            if i == j:
                raise TermError("hopping term needs two distinct orbitals")
            for k, mask in enumerate(basis.states):
                m = int(mask)
                occ_lo = (m >> lo) & 1
                occ_hi = (m >> hi) & 1
                if occ_lo == occ_hi:
                    continue
                target = index[m ^ (1 << lo) ^ (1 << hi)]
                h[target, k] += term.coefficient * _jw_sign(m, lo, hi)
        else:
            raise TermError(f"unknown term kind {term.kind!r}")
    return basis, h
