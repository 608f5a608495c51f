"""Exact-diagonalization oracle for per-sector Hubbard spectra.

Sector blocks at these sizes stay tiny (a 4x2 lattice at half filling is
4900 states), so a dense symmetric eigensolve beats any iterative scheme
and is trusted as ground truth everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import build_hubbard, sector_matrix
from .lattice import LatticeGeometry, bonds


@dataclass(frozen=True)
class SpectrumResult:
    """Lowest eigenvalues of one (n_up, n_down) sector, ascending."""

    sector: tuple[int, int]
    energies: tuple[float, ...]
    requested: int
    truncated: bool = False  # set when requested > sector dimension


def exact_spectrum(
    geometry: LatticeGeometry,
    u_over_t: float,
    n_up: int,
    n_down: int,
    k: int = 1,
) -> SpectrumResult:
    """Lowest k exact eigenvalues of the sector Hamiltonian."""
    if k < 1:
        raise ValueError(f"need k >= 1 eigenvalues, got {k}")
    terms = build_hubbard(geometry, u_over_t)
    _, h = sector_matrix(terms, geometry, n_up, n_down)
    eigenvalues = np.linalg.eigvalsh(h)
    truncated = k > eigenvalues.size
    take = min(k, eigenvalues.size)
    return SpectrumResult(
        sector=(n_up, n_down),
        energies=tuple(float(e) for e in eigenvalues[:take]),
        requested=k,
        truncated=truncated,
    )


def hopping_matrix(geometry: LatticeGeometry) -> np.ndarray:
    """Single-particle hopping matrix (-1 on each bond) over sites."""
    h = np.zeros((geometry.n_sites, geometry.n_sites), dtype=np.float64)
    for bond in bonds(geometry):
        h[bond.site_a, bond.site_b] = -1.0
        h[bond.site_b, bond.site_a] = -1.0
    return h


def free_fermion_ground(geometry: LatticeGeometry, n_up: int, n_down: int) -> float:
    """U = 0 ground energy: fill the lowest single-particle modes per spin."""
    if not (0 <= n_up <= geometry.n_sites and 0 <= n_down <= geometry.n_sites):
        raise ValueError(f"occupations ({n_up}, {n_down}) invalid for {geometry.n_sites} sites")
    modes = np.linalg.eigvalsh(hopping_matrix(geometry))
    return float(modes[:n_up].sum() + modes[:n_down].sum())
