"""Parameterized ansatz circuits for the Hubbard lattice.

A circuit is X preparation of a reference occupation, a brick-wall layer
of Givens rotations (enough to reach any free-fermion state at these
sizes), then `layers` repetitions of hopping gates over every same-spin
bond followed by an onsite phase gate per site.  Every gate angle is an
independent variational parameter.

Same-spin bonds whose orbitals are not adjacent on the snake chain are
bridged with fermionic swaps: the far orbital is walked next to its
partner, the hopping gate is applied, and the walk is undone immediately,
so the net qubit permutation of a full circuit is always the identity.
Disabling the bridging (use_fswap=False) applies those gates across
non-adjacent qubits directly, which ignores the Jordan-Wigner parity
string; that variant exists for ablation studies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .lattice import LatticeGeometry, bonds
from .simulator import Statevector, init_occupation_state

VARIANTS = ("modified_hopping", "plain_hopping", "number_preserving")

_HOP_KIND = {
    "modified_hopping": ("mod_hop", 2),
    "plain_hopping": ("hop", 1),
    "number_preserving": ("u_np", 2),
}


@dataclass(frozen=True)
class AnsatzConfig:
    layers: int = 2
    use_fswap: bool = True
    variant: str = "modified_hopping"

    def __post_init__(self):
        if self.layers < 1:
            raise ValueError(f"layers must be >= 1, got {self.layers}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")


@dataclass(frozen=True)
class Slot:
    """One gate position: kind, target qubits, its parameter indices."""

    kind: str
    targets: tuple[int, int]
    params: tuple[int, ...] = ()


@dataclass
class ParameterizedCircuit:
    n_qubits: int
    prep: tuple[int, ...]
    slots: list[Slot]
    n_params: int
    sector: tuple[int, int]
    flags: tuple[str, ...] = ()
    _program: tuple[np.ndarray, ...] = field(default=None, repr=False)

    def compiled(self) -> tuple[np.ndarray, ...]:
        """Slot arrays (kinds, qas, qbs, p0, p1) for the gate kernels."""
        if self._program is None:
            n = len(self.slots)
            kinds = np.empty(n, dtype=np.int64)
            qas = np.empty(n, dtype=np.int64)
            qbs = np.empty(n, dtype=np.int64)
            p0 = np.full(n, -1, dtype=np.int64)
            p1 = np.full(n, -1, dtype=np.int64)
            for t, slot in enumerate(self.slots):
                kinds[t] = kernels.GATE_CODES[slot.kind]
                qas[t], qbs[t] = slot.targets
                if len(slot.params) > 0:
                    p0[t] = slot.params[0]
                if len(slot.params) > 1:
                    p1[t] = slot.params[1]
            self._program = (kinds, qas, qbs, p0, p1)
        return self._program

    def summary(self) -> str:
        """One line per slot, suitable for golden-file comparison."""
        lines = ["prep X " + ",".join(str(q) for q in self.prep)]
        for slot in self.slots:
            ps = ",".join(str(p) for p in slot.params)
            lines.append(f"{slot.kind} ({slot.targets[0]},{slot.targets[1]}) [{ps}]")
        return "\n".join(lines)


def reference_occupation(geometry: LatticeGeometry, n_up: int, n_down: int) -> set[int]:
    """Lowest snake-index orbitals of each spin block."""
    if not (0 <= n_up <= geometry.n_sites and 0 <= n_down <= geometry.n_sites):
        raise ValueError(
            f"occupations ({n_up}, {n_down}) invalid for {geometry.n_sites} sites"
        )
    ups = set(range(n_up))
    downs = set(range(geometry.n_sites, geometry.n_sites + n_down))
    return ups | downs


class _SlotBuilder:
    def __init__(self):
        self.slots: list[Slot] = []
        self.next_param = 0

    def add(self, kind: str, targets: tuple[int, int], arity: int) -> None:
        params = tuple(range(self.next_param, self.next_param + arity))
        self.next_param += arity
        self.slots.append(Slot(kind, targets, params))

    def add_fswap(self, targets: tuple[int, int]) -> None:
        self.slots.append(Slot("fswap", targets))


def _givens_layer(builder: _SlotBuilder, n_sites: int) -> None:
    rounds = (n_sites + 1) // 2
    for _ in range(rounds):
        for parity in (0, 1):
            for offset in (0, n_sites):
                for k in range(parity, n_sites - 1, 2):
                    builder.add("givens", (offset + k, offset + k + 1), 1)


def _bridged_gate(builder: _SlotBuilder, kind: str, arity: int, qi: int, qj: int) -> None:
    # walk orbital qj down next to qi, hop, walk back
    for t in range(qj - 1, qi, -1):
        builder.add_fswap((t, t + 1))
    builder.add(kind, (qi, qi + 1), arity)
    for t in range(qi + 1, qj):
        builder.add_fswap((t, t + 1))


def build_state_prep_circuit(
    geometry: LatticeGeometry, n_up: int, n_down: int
) -> ParameterizedCircuit:
    """X preparation plus the Givens brick-wall layer only.

    Optimized on its own this reaches the non-interacting (U = 0) ground
    state; build_ansatz extends it with the interacting layers.
    """
    prep = tuple(sorted(reference_occupation(geometry, n_up, n_down)))
    builder = _SlotBuilder()
    _givens_layer(builder, geometry.n_sites)
    return ParameterizedCircuit(
        n_qubits=geometry.n_qubits,
        prep=prep,
        slots=builder.slots,
        n_params=builder.next_param,
        sector=(n_up, n_down),
    )


def build_ansatz(
    geometry: LatticeGeometry,
    n_up: int,
    n_down: int,
    config: AnsatzConfig = AnsatzConfig(),
) -> ParameterizedCircuit:
    """Full variational circuit: prep, Givens layer, `layers` HVA layers."""
    base = build_state_prep_circuit(geometry, n_up, n_down)
    builder = _SlotBuilder()
    builder.slots = list(base.slots)
    builder.next_param = base.n_params

    kind, arity = _HOP_KIND[config.variant]
    n_sites = geometry.n_sites
    bond_list = bonds(geometry)
    bridging_skipped = False
    for _ in range(config.layers):
        for offset in (0, n_sites):
            for bond in bond_list:
                qi, qj = offset + bond.site_a, offset + bond.site_b
                if qj - qi == 1:
                    builder.add(kind, (qi, qj), arity)
                elif config.use_fswap:
                    _bridged_gate(builder, kind, arity, qi, qj)
                else:
                    bridging_skipped = True
                    builder.add(kind, (qi, qj), arity)
        for site in range(n_sites):
            builder.add("onsite", (site, n_sites + site), 1)

    flags = ("nonadjacent_gates_without_fswap",) if bridging_skipped else ()
    return ParameterizedCircuit(
        n_qubits=geometry.n_qubits,
        prep=base.prep,
        slots=builder.slots,
        n_params=builder.next_param,
        sector=(n_up, n_down),
        flags=flags,
    )


def run_circuit(circuit: ParameterizedCircuit, params: np.ndarray) -> Statevector:
    """Execute the circuit and return the resulting statevector."""
    params = np.asarray(params, dtype=np.float64)
    if params.shape != (circuit.n_params,):
        raise ValueError(
            f"expected {circuit.n_params} parameters, got shape {params.shape}"
        )
    state = init_occupation_state(circuit.n_qubits, circuit.prep)
    kinds, qas, qbs, p0, p1 = circuit.compiled()
    kernels.run_gate_program(state.amplitudes, kinds, qas, qbs, p0, p1, params)
    return state
