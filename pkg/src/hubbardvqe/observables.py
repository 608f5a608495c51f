"""Charge gaps, spin gaps, and (electron number, U/t) phase diagrams.

Energies come from an energy source object: ExactSource wraps the
diagonalization oracle, VqeSource wraps the variational solver.  Any
object with a level_energy(u, n_up, n_down, level) method, a name, and a
degeneracy_tol attribute works, which keeps the gap formulas testable
against synthetic spectra.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .ansatz import AnsatzConfig
from .exactdiag import exact_spectrum
from .hamiltonian import sector_basis
from .lattice import LatticeGeometry
from .vqe import OptimizerSchedule, solve_level

DEFAULT_U_GRID = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0)

EXACT_DEGENERACY_TOL = 1e-8
VQE_DEGENERACY_TOL = 1e-3  # optimizer noise blurs near-degenerate sectors


def sector_splits(n_sites: int, n_electrons: int, canonical: bool = False):
    """All (n_up, n_down) splits of n_electrons; canonical keeps n_up >= n_down."""
    splits = []
    for n_up in range(n_electrons + 1):
        n_down = n_electrons - n_up
        if n_up > n_sites or n_down > n_sites:
            continue
        if canonical and n_up < n_down:
            continue
        splits.append((n_up, n_down))
    return splits


class ExactSource:
    """Per-sector level energies from the diagonalization oracle."""

    name = "exact"
    degeneracy_tol = EXACT_DEGENERACY_TOL

    def __init__(self, geometry: LatticeGeometry, max_level: int = 2):
        self.geometry = geometry
        self.max_level = max_level
        self._cache: dict[tuple[float, int, int], tuple[float, ...]] = {}

    def level_energy(self, u: float, n_up: int, n_down: int, level: int) -> float | None:
        key = (float(u), n_up, n_down)
        if key not in self._cache:
            spectrum = exact_spectrum(
                self.geometry, u, n_up, n_down, k=max(self.max_level, level) + 1
            )
            self._cache[key] = spectrum.energies
        energies = self._cache[key]
        return energies[level] if level < len(energies) else None


class VqeSource:
    """Per-sector level energies from deflated VQE runs.

    Sectors related by a spin flip share one solve (the Hamiltonian is
    exactly symmetric under exchanging up and down).  Every cell seeds
    its restarts from the root seed and its own (U, sector) key, so a
    sweep is reproducible regardless of evaluation order.
    """

    name = "vqe"
    degeneracy_tol = VQE_DEGENERACY_TOL

    def __init__(
        self,
        geometry: LatticeGeometry,
        config: AnsatzConfig = AnsatzConfig(),
        schedule: OptimizerSchedule = OptimizerSchedule(),
    ):
        self.geometry = geometry
        self.config = config
        self.schedule = schedule
        self._cache: dict[tuple[int, int, int], list] = {}

    def _cell_seed(self, u_key: int, n_up: int, n_down: int) -> int:
        seq = np.random.SeedSequence(
            entropy=self.schedule.seed, spawn_key=(u_key, n_up, n_down)
        )
        return int(seq.generate_state(1)[0])

    def level_energy(self, u: float, n_up: int, n_down: int, level: int) -> float | None:
        n_up, n_down = max(n_up, n_down), min(n_up, n_down)
        if sector_basis(self.geometry, n_up, n_down).dim <= level:
            return None
        u_key = int(round(float(u) * 1_000_000))
        key = (u_key, n_up, n_down)
        solved = self._cache.setdefault(key, [])
        if level >= len(solved):
            schedule = replace(self.schedule, seed=self._cell_seed(u_key, n_up, n_down))
            priors = [result.state for result in solved]
            for next_level in range(len(solved), level + 1):
                result = solve_level(
                    self.geometry, u, n_up, n_down, next_level,
                    config=self.config, schedule=schedule, priors=priors,
                )
                solved.append(result)
                priors.append(result.state)
        return solved[level].energy


def sector_ground(
    source, geometry: LatticeGeometry, u: float, n_electrons: int, level: int = 0
) -> tuple[float | None, tuple[int, int] | None]:
    """Lowest level-energy over all sectors with n_electrons electrons.

    Ties (within 1e-9) break toward smaller |n_up - n_down|, then toward
    larger n_up.
    """
    if not 1 <= n_electrons <= 2 * geometry.n_sites:
        raise ValueError(f"electron count {n_electrons} outside [1, {2 * geometry.n_sites}]")
    candidates = []
    for n_up, n_down in sector_splits(geometry.n_sites, n_electrons):
        energy = source.level_energy(u, n_up, n_down, level)
        if energy is not None:
            candidates.append((energy, (n_up, n_down)))
    if not candidates:
        return None, None
    best_energy = min(energy for energy, _ in candidates)
    tied = [sector for energy, sector in candidates if energy <= best_energy + 1e-9]
    tied.sort(key=lambda s: (abs(s[0] - s[1]), -s[0]))
    return best_energy, tied[0]


def charge_gap(
    source, geometry: LatticeGeometry, u: float, n_electrons: int, level: int = 0
) -> float | None:
    """E(N+1) + E(N-1) - 2 E(N) from per-level sector grounds.

    Undefined (None) at the boundary electron counts and wherever a
    needed level energy does not exist.
    """
    if n_electrons - 1 < 1 or n_electrons + 1 > 2 * geometry.n_sites:
        return None
    energies = []
    for n in (n_electrons - 1, n_electrons, n_electrons + 1):
        energy, _ = sector_ground(source, geometry, u, n, level)
        if energy is None:
            return None
        energies.append(energy)
    return energies[2] + energies[0] - 2.0 * energies[1]


def spin_gap(
    source, geometry: LatticeGeometry, u: float, n_electrons: int, level: int = 0
) -> float | None:
    """Gap between the two lowest distinct sector energies at fixed N.

    Spin-flip partners are counted once; sectors degenerate with the
    minimum (within the source's degeneracy tolerance) are excluded, so
    the gap is always against a genuinely different energy.  None when
    every sector ties with the minimum.
    """
    tol = source.degeneracy_tol
    energies = []
    for n_up, n_down in sector_splits(geometry.n_sites, n_electrons, canonical=True):
        energy = source.level_energy(u, n_up, n_down, level)
        if energy is not None:
            energies.append(energy)
    if not energies:
        return None
    lowest = min(energies)
    higher = [energy for energy in energies if energy > lowest + tol]
    if not higher:
        return None
    return min(higher) - lowest


@dataclass
class GapCell:
    n_electrons: int
    u: float
    sector: tuple[int, int] | None
    energy: float | None
    charge_gap: float | None
    spin_gap: float | None
    error: str | None = None


@dataclass
class GapDiagram:
    geometry_tag: str
    energy_source: str
    level: int
    u_values: tuple[float, ...]
    cells: dict[tuple[int, float], GapCell]

    def cell(self, n_electrons: int, u: float) -> GapCell:
        return self.cells[(n_electrons, float(u))]

    def quantity_grid(self, quantity: str) -> np.ndarray:
        """(len(u_values), n_electron_counts) array with NaN for undefined."""
        n_max = max(n for n, _ in self.cells)
        grid = np.full((len(self.u_values), n_max), np.nan)
        for (n, u), cell in self.cells.items():
            value = getattr(cell, quantity)
            if value is not None:
                grid[self.u_values.index(u), n - 1] = value
        return grid


def build_diagram(
    source,
    geometry: LatticeGeometry,
    u_values,
    level: int = 0,
) -> GapDiagram:
    """Fill the (N, U) grid with energies and both gaps.

    Per-cell failures are recorded on the cell and never abort the sweep.
    """
    u_values = tuple(float(u) for u in u_values)
    if not u_values:
        raise ValueError("u_values must not be empty")
    if level not in (0, 1, 2):
        raise ValueError(f"diagram level must be 0, 1, or 2, got {level}")
    cells = {}
    for u in u_values:
        for n_electrons in range(1, 2 * geometry.n_sites + 1):
            try:
                energy, sector = sector_ground(source, geometry, u, n_electrons, level)
                cells[(n_electrons, u)] = GapCell(
                    n_electrons=n_electrons,
                    u=u,
                    sector=sector,
                    energy=energy,
                    charge_gap=charge_gap(source, geometry, u, n_electrons, level),
                    spin_gap=spin_gap(source, geometry, u, n_electrons, level),
                )
            except Exception as exc:  # noqa: BLE001 - flagged, sweep continues
                cells[(n_electrons, u)] = GapCell(
                    n_electrons=n_electrons,
                    u=u,
                    sector=None,
                    energy=None,
                    charge_gap=None,
                    spin_gap=None,
                    error=f"{type(exc).__name__}: {exc}",
                )
    return GapDiagram(
        geometry_tag=geometry.tag(),
        energy_source=source.name,
        level=level,
        u_values=u_values,
        cells=cells,
    )


def excited_gap_diagram(source, geometry: LatticeGeometry, u_values, level: int = 2) -> GapDiagram:
    """Gap diagram with an excited level's energies in place of the ground's."""
    return build_diagram(source, geometry, u_values, level=level)


def error_summary(test: GapDiagram, reference: GapDiagram) -> dict:
    """MAE / MSE / MPE per quantity over cells defined in both diagrams.

    MPE is the percentage error between the averaged diagram values.
    """
    summary = {}
    for quantity in ("energy", "charge_gap", "spin_gap"):
        test_vals, ref_vals = [], []
        for key, ref_cell in reference.cells.items():
            test_cell = test.cells.get(key)
            if test_cell is None:
                continue
            a = getattr(test_cell, quantity)
            b = getattr(ref_cell, quantity)
            if a is None or b is None:
                continue
            test_vals.append(a)
            ref_vals.append(b)
        if not test_vals:
            summary[quantity] = {"mae": None, "mse": None, "mpe": None, "cells": 0}
            continue
        diff = np.asarray(test_vals) - np.asarray(ref_vals)
        ref_mean = float(np.mean(ref_vals))
        mpe = (
            abs(float(np.mean(test_vals)) - ref_mean) / abs(ref_mean) * 100.0
            if abs(ref_mean) > 1e-12
            else None
        )
        summary[quantity] = {
            "mae": float(np.mean(np.abs(diff))),
            "mse": float(np.mean(diff**2)),
            "mpe": mpe,
            "cells": len(test_vals),
        }
    return summary
