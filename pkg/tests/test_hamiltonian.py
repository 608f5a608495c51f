import itertools

import numpy as np
import pytest

from hubbardvqe.hamiltonian import (
    HOPPING,
    ONSITE,
    FermionTerm,
    PauliSum,
    TermError,
    build_hubbard,
    hubbard_pauli_sum,
    jordan_wigner,
    sector_basis,
    sector_matrix,
    to_dense,
)
from hubbardvqe.lattice import build_geometry


def test_term_counts_chain():
    g = build_geometry(1, 4)
    terms = build_hubbard(g, 4.0)
    hops = [t for t in terms if t.kind == HOPPING]
    onsites = [t for t in terms if t.kind == ONSITE]
    assert len(hops) == 6  # 3 bonds x 2 spins
    assert len(onsites) == 4
    assert all(t.coefficient == -1.0 for t in hops)
    assert all(t.coefficient == 4.0 for t in onsites)


def test_term_counts_single_site():
    g = build_geometry(1, 1)
    terms = build_hubbard(g, 2.0)
    assert [t.kind for t in terms] == [ONSITE]
    assert terms[0].orbitals == (0, 1)


def test_term_counts_square_u0():
    g = build_geometry(2, 2)
    terms = build_hubbard(g, 0.0)
    assert sum(t.kind == HOPPING for t in terms) == 8  # 4 bonds x 2 spins
    assert all(t.coefficient == 0.0 for t in terms if t.kind == ONSITE)


def test_negative_u_rejected():
    g = build_geometry(1, 2)
    with pytest.raises(TermError):
        build_hubbard(g, -1.0)


def test_jordan_wigner_adjacent_hop():
    psum = jordan_wigner(FermionTerm(HOPPING, (0, 1), 1.0), 2)
    assert psum.terms == [(0.5, "XX"), (0.5, "YY")]


def test_jordan_wigner_hop_z_string():
    psum = jordan_wigner(FermionTerm(HOPPING, (0, 2), 1.0), 3)
    assert psum.terms == [(0.5, "XZX"), (0.5, "YZY")]
    long = jordan_wigner(FermionTerm(HOPPING, (1, 4), -1.0), 5)
    assert long.terms == [(-0.5, "IXZZX"), (-0.5, "IYZZY")]


def test_jordan_wigner_onsite_projector():
    psum = jordan_wigner(FermionTerm(ONSITE, (0, 1), 1.0), 2)
    assert psum.terms == [(0.25, "II"), (-0.25, "IZ"), (-0.25, "ZI"), (0.25, "ZZ")]


def test_jordan_wigner_rejects_equal_hop_orbitals():
    with pytest.raises(TermError):
        jordan_wigner(FermionTerm(HOPPING, (1, 1), 1.0), 3)


def test_canonicalization_merges_and_drops():
    psum = PauliSum(2, [(0.5, "XX"), (0.5, "XX"), (1e-16, "ZZ")]).canonicalize()
    assert psum.terms == [(1.0, "XX")]


def test_dump_format():
    psum = PauliSum(3, [(0.5, "XXI")]).canonicalize()
    assert psum.dump() == "0.5 XXI"


def test_to_dense_single_z():
    psum = PauliSum(1, [(1.0, "Z")]).canonicalize()
    assert np.allclose(to_dense(psum), np.diag([1.0, -1.0]))


def test_to_dense_hop_swap_block():
    psum = jordan_wigner(FermionTerm(HOPPING, (0, 1), 1.0), 2)
    h = to_dense(psum)
    expected = np.zeros((4, 4))
    expected[1, 2] = expected[2, 1] = 1.0  # |01> <-> |10> block only
    assert np.allclose(h, expected)


def test_to_dense_two_site_hubbard_half_filled_block():
    g = build_geometry(1, 2)
    h = to_dense(hubbard_pauli_sum(g, 4.0))
    assert h.shape == (16, 16)
    basis = sector_basis(g, 1, 1)
    block = h[np.ix_(basis.states, basis.states)]
    eigs = np.linalg.eigvalsh(block)
    expected = sorted([2 - 2 * np.sqrt(2), 0.0, 4.0, 2 + 2 * np.sqrt(2)])
    assert np.allclose(eigs, expected, atol=1e-12)


def test_to_dense_hermitian():
    g = build_geometry(2, 2)
    h = to_dense(hubbard_pauli_sum(g, 3.0))
    assert np.abs(h - h.conj().T).max() <= 1e-12


def test_to_dense_cap():
    with pytest.raises(TermError):
        to_dense(PauliSum(15, [(1.0, "I" * 15)]).canonicalize())


def test_sector_basis_size_and_order():
    g = build_geometry(1, 4)
    basis = sector_basis(g, 2, 2)
    assert basis.dim == 36  # C(4,2)^2
    assert np.all(np.diff(basis.states) > 0)
    for m in basis.states:
        assert bin(int(m) & 0b1111).count("1") == 2
        assert bin((int(m) >> 4) & 0b1111).count("1") == 2


def test_sector_matrix_two_site_closed_form():
    g = build_geometry(1, 2)
    for u in (0.0, 1.0, 4.0):
        _, h = sector_matrix(build_hubbard(g, u), g, 1, 1)
        assert h.shape == (4, 4)
        ground = np.linalg.eigvalsh(h)[0]
        assert ground == pytest.approx((u - np.sqrt(u**2 + 16)) / 2, abs=1e-12)


def test_sector_matrix_vacuum():
    g = build_geometry(2, 2)
    basis, h = sector_matrix(build_hubbard(g, 3.0), g, 0, 0)
    assert basis.dim == 1
    assert h.shape == (1, 1)
    assert h[0, 0] == 0.0


def test_sector_matrix_chain_free_fermions():
    g = build_geometry(1, 4)
    _, h = sector_matrix(build_hubbard(g, 0.0), g, 2, 2)
    ground = np.linalg.eigvalsh(h)[0]
    # fill modes -2cos(k pi / 5), k = 1, 2, for both spins
    modes = -2 * np.cos(np.pi * np.arange(1, 5) / 5)
    assert ground == pytest.approx(2 * np.sort(modes)[:2].sum(), abs=1e-9)
    assert ground == pytest.approx(-4.4721, abs=5e-5)


@pytest.mark.parametrize("rows,cols,u", [(1, 2, 4.0), (1, 3, 2.0), (2, 2, 4.0)])
def test_pauli_route_equals_sector_route(rows, cols, u):
    # the two Hamiltonian materializations are mutual oracles
    g = build_geometry(rows, cols)
    terms = build_hubbard(g, u)
    full = to_dense(hubbard_pauli_sum(g, u))
    for n_up in range(g.n_sites + 1):
        for n_down in range(g.n_sites + 1):
            basis, block = sector_matrix(terms, g, n_up, n_down)
            sub = full[np.ix_(basis.states, basis.states)]
            assert np.abs(sub - block).max() <= 1e-12


def test_single_term_sector_restriction_matches_dense():
    g = build_geometry(1, 3)
    for term in build_hubbard(g, 2.5):
        dense = to_dense(jordan_wigner(term, g.n_qubits))
        basis, block = sector_matrix([term], g, 2, 1)
        sub = dense[np.ix_(basis.states, basis.states)]
        assert np.abs(sub - block).max() <= 1e-12


def _number_operator(n_qubits, qubits):
    terms = [(0.5 * len(qubits), "I" * n_qubits)]
    for q in qubits:
        terms.append((-0.5, "I" * q + "Z" + "I" * (n_qubits - q - 1)))
    return to_dense(PauliSum(n_qubits, terms).canonicalize())


@pytest.mark.parametrize("rows,cols", [(1, 3), (2, 2)])
def test_hamiltonian_commutes_with_number_and_sz(rows, cols):
    g = build_geometry(rows, cols)
    h = to_dense(hubbard_pauli_sum(g, 3.0))
    n_total = _number_operator(g.n_qubits, range(g.n_qubits))
    n_up = _number_operator(g.n_qubits, range(g.n_sites))
    n_down = _number_operator(g.n_qubits, range(g.n_sites, g.n_qubits))
    sz = 0.5 * (n_up - n_down)
    assert np.abs(h @ n_total - n_total @ h).max() <= 1e-10
    assert np.abs(h @ sz - sz @ h).max() <= 1e-10


def test_pauli_sums_hermitian_real_coefficients():
    g = build_geometry(2, 2)
    for term in build_hubbard(g, 2.0):
        for coeff, _ in jordan_wigner(term, g.n_qubits).terms:
            assert isinstance(coeff, float)
