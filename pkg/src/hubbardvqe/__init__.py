"""Fermi-Hubbard ground and excited state energies via VQE.

Small-lattice statevector VQE with a hybrid layered ansatz, an exact
diagonalization oracle for validation, and charge/spin gap phase-diagram
sweeps over electron number and interaction strength.
"""

from .ansatz import (
    AnsatzConfig,
    ParameterizedCircuit,
    build_ansatz,
    build_state_prep_circuit,
    reference_occupation,
    run_circuit,
)
from .exactdiag import SpectrumResult, exact_spectrum, free_fermion_ground
from .hamiltonian import (
    FermionTerm,
    PauliSum,
    SectorBasis,
    build_hubbard,
    hubbard_pauli_sum,
    jordan_wigner,
    sector_basis,
    sector_matrix,
    to_dense,
)
from .kernels import BACKEND, NUMBA_AVAILABLE
from .lattice import (
    Bond,
    GeometryError,
    LatticeGeometry,
    bonds,
    build_geometry,
    parse_geometry,
    qubit_index,
)
from .observables import (
    ExactSource,
    GapDiagram,
    VqeSource,
    build_diagram,
    charge_gap,
    error_summary,
    excited_gap_diagram,
    sector_ground,
    spin_gap,
)
from .simulator import (
    Statevector,
    TwoQubitGate,
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
from .vqe import (
    ObjectiveSpec,
    OptimizerSchedule,
    VqeResult,
    central_difference_gradient,
    objective_value,
    solve_level,
    solve_levels,
    stage1_minimize,
    stage2_minimize,
)

__version__ = "0.1.0"
