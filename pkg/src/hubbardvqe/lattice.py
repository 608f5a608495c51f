"""Rectangular lattice geometry with snake-ordered spin orbitals.

Sites of a rows x cols grid are numbered along a boustrophedon path:
left-to-right on even rows, right-to-left on odd rows.  Each site carries
an up and a down spin orbital; all up orbitals come first on the qubit
register, followed by all down orbitals in the same site order.  This
keeps every in-row neighbor pair adjacent on the qubit chain, so most
hopping terms need no Jordan-Wigner Z-strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

UP = "up"
DOWN = "down"

DEFAULT_QUBIT_CAP = 20


class GeometryError(ValueError):
    """Raised for empty grids or grids above the qubit cap."""


@dataclass(frozen=True)
class Bond:
    """Unordered nearest-neighbor pair of site indices (site_a < site_b)."""

    site_a: int
    site_b: int
    orientation: str  # "horizontal" (same row) or "vertical" (same column)


@dataclass(frozen=True)
class LatticeGeometry:
    """Open-boundary rectangular lattice with snake site numbering.

    Site index k is the k-th site along the snake path; the up orbital of
    site k is qubit k and the down orbital is qubit n_sites + k.
    """

    rows: int
    cols: int
    n_sites: int = field(init=False)
    n_qubits: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n_sites", self.rows * self.cols)
        object.__setattr__(self, "n_qubits", 2 * self.rows * self.cols)

    def site_at(self, row: int, col: int) -> int:
        """Snake index of the site at grid position (row, col)."""
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise IndexError(f"grid position ({row}, {col}) outside {self.rows}x{self.cols}")
        return row * self.cols + (col if row % 2 == 0 else self.cols - 1 - col)

    def coords_of(self, site: int) -> tuple[int, int]:
        """Grid position (row, col) of a snake site index."""
        if not 0 <= site < self.n_sites:
            raise IndexError(f"site {site} outside [0, {self.n_sites})")
        row, offset = divmod(site, self.cols)
        col = offset if row % 2 == 0 else self.cols - 1 - offset
        return row, col

    def tag(self) -> str:
        return f"{self.rows}x{self.cols}"


def build_geometry(rows: int, cols: int, max_qubits: int = DEFAULT_QUBIT_CAP) -> LatticeGeometry:
    """Validate dimensions and build a snake-ordered geometry.

    Raises GeometryError when a dimension is < 1 or 2*rows*cols exceeds
    max_qubits (default 20, i.e. at most a 2^20 statevector downstream).
    """
    if rows < 1 or cols < 1:
        raise GeometryError(f"lattice dimensions must be positive, got {rows}x{cols}")
    if 2 * rows * cols > max_qubits:
        raise GeometryError(
            f"{rows}x{cols} needs {2 * rows * cols} qubits, above the cap of {max_qubits}"
        )
    return LatticeGeometry(rows, cols)


def parse_geometry(text: str, max_qubits: int = DEFAULT_QUBIT_CAP) -> LatticeGeometry:
    """Parse a "ROWSxCOLS" string such as "2x2" or "1x4"."""
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise GeometryError(f"geometry must look like 'ROWSxCOLS', got {text!r}")
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise GeometryError(f"geometry must look like 'ROWSxCOLS', got {text!r}") from exc
    return build_geometry(rows, cols, max_qubits=max_qubits)


def qubit_index(geometry: LatticeGeometry, site: int, spin: str) -> int:
    """Qubit carrying the (site, spin) orbital: up block first, then down."""
    if not 0 <= site < geometry.n_sites:
        raise IndexError(f"site {site} outside [0, {geometry.n_sites})")
    if spin == UP:
        return site
    if spin == DOWN:
        return geometry.n_sites + site
    raise ValueError(f"spin must be 'up' or 'down', got {spin!r}")


def bonds(geometry: LatticeGeometry) -> list[Bond]:
    """All nearest-neighbor bonds under open boundary conditions.

    Each grid-adjacent pair appears exactly once, as snake site indices
    with site_a < site_b.  Order is deterministic: row-major over grid
    positions, horizontal neighbor before vertical neighbor.
    """
    out = []
    for row in range(geometry.rows):
        for col in range(geometry.cols):
            here = geometry.site_at(row, col)
            if col + 1 < geometry.cols:
                other = geometry.site_at(row, col + 1)
                out.append(Bond(min(here, other), max(here, other), "horizontal"))
            if row + 1 < geometry.rows:
                other = geometry.site_at(row + 1, col)
                out.append(Bond(min(here, other), max(here, other), "vertical"))
    return out
