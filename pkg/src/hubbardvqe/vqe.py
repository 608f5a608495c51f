"""Variational driver: penalized objectives and the two-stage optimizer.

Each energy level is found by minimizing <psi|H|psi> plus an
orthogonality penalty against the converged states of all lower levels.
Minimization runs a derivative-free trust-region stage (COBYLA, global
exploration) followed by a short quasi-Newton refinement (L-BFGS-B with
central-difference gradients).  Several independently seeded restarts are
performed and the best is reported alongside the restart spread.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .ansatz import AnsatzConfig, ParameterizedCircuit, build_ansatz, run_circuit
from .exactdiag import exact_spectrum
from .hamiltonian import (
    PauliSum,
    build_hubbard,
    hubbard_pauli_sum,
    sector_basis,
    to_dense,
)
from .lattice import LatticeGeometry
from .simulator import Statevector, expectation, overlap

log = logging.getLogger(__name__)

DENSE_OBJECTIVE_QUBIT_CAP = 12
FD_STEP = 1e-5


class NumericalError(RuntimeError):
    """Objective became non-finite during optimization."""


class LevelOrderError(ValueError):
    """Excited levels were requested without their lower-level states."""


@dataclass
class ObjectiveSpec:
    """Energy objective with optional orthogonality penalties."""

    circuit: ParameterizedCircuit
    hamiltonian: PauliSum
    prior_states: list[Statevector] = field(default_factory=list)
    penalty_weight: float = 10.0
    _matrix: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        for prior in self.prior_states:
            if prior.n_qubits != self.circuit.n_qubits:
                raise ValueError("prior state register does not match the circuit")
            if abs(prior.norm() - 1.0) > 1e-8:
                raise ValueError(f"prior state not normalized (norm {prior.norm()})")
        if self.penalty_weight <= 0:
            raise ValueError("penalty weight must be positive")

    def operator(self):
        """Dense matrix when small enough, else the PauliSum itself."""
        if self.circuit.n_qubits <= DENSE_OBJECTIVE_QUBIT_CAP:
            if self._matrix is None:
                self._matrix = to_dense(self.hamiltonian)
            return self._matrix
        return self.hamiltonian


def objective_value(spec: ObjectiveSpec, params: np.ndarray) -> float:
    """<psi|H|psi> + penalty_weight * sum of squared prior overlaps."""
    state = run_circuit(spec.circuit, params)
    value = expectation(state, spec.operator())
    for prior in spec.prior_states:
        value += spec.penalty_weight * abs(overlap(prior, state)) ** 2
    return value


def central_difference_gradient(f, x: np.ndarray, h: float = FD_STEP) -> np.ndarray:
    """Per-coordinate central finite differences of f at x."""
    x = np.asarray(x, dtype=np.float64)
    grad = np.empty(x.size, dtype=np.float64)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        grad[i] = (f(x + step) - f(x - step)) / (2.0 * h)
    return grad


class _Recorder:
    """Wraps an objective: counts evals, tracks the best point, traces."""

    def __init__(self, f, stage: str, trace: list | None):
        self.f = f
        self.stage = stage
        self.trace = trace
        self.n_evals = 0
        self.best_x = None
        self.best_f = np.inf

    def __call__(self, x):
        value = float(self.f(np.asarray(x, dtype=np.float64)))
        self.n_evals += 1
        if not np.isfinite(value):
            raise NumericalError(
                f"objective returned {value} at eval {self.n_evals} ({self.stage})"
            )
        if value < self.best_f:
            self.best_f = value
            self.best_x = np.array(x, dtype=np.float64, copy=True)
        if self.trace is not None:
            self.trace.append((self.n_evals, self.stage, value))
        return value


def stage1_minimize(
    f,
    x0,
    max_iters: int = 500,
    rho_begin: float = 0.5,
    rho_end: float = 1e-4,
    trace: list | None = None,
) -> tuple[np.ndarray, float]:
    """Derivative-free COBYLA stage; returns the best point encountered."""
    recorder = _Recorder(f, "stage1", trace)
    x0 = np.asarray(x0, dtype=np.float64)
    recorder(x0)
    minimize(
        recorder,
        x0,
        method="COBYLA",
        tol=rho_end,
        options={"rhobeg": rho_begin, "maxiter": max_iters},
    )
    return recorder.best_x, recorder.best_f


def stage2_minimize(
    f,
    x0,
    max_iters: int = 50,
    fd_step: float = FD_STEP,
    trace: list | None = None,
) -> tuple[np.ndarray, float]:
    """Quasi-Newton refinement with central-difference gradients."""
    recorder = _Recorder(f, "stage2", trace)
    x0 = np.asarray(x0, dtype=np.float64)
    recorder(x0)
    result = minimize(
        recorder,
        x0,
        method="L-BFGS-B",
        jac=lambda x: central_difference_gradient(recorder, x, fd_step),
        options={"maxiter": max_iters},
    )
    if not result.success:
        log.debug("stage2 stopped early: %s", result.message)
    return recorder.best_x, recorder.best_f


@dataclass(frozen=True)
class OptimizerSchedule:
    stage1_iters: int = 500
    stage2_iters: int = 50
    restarts: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.stage1_iters < 1 or self.stage2_iters < 1:
            raise ValueError("both optimizer stages need at least one iteration")
        if self.restarts < 1:
            raise ValueError("need at least one restart")


@dataclass
class VqeResult:
    level: int
    energy: float
    params: np.ndarray
    runs: tuple[float, ...]
    mean: float
    std_dev: float
    overlaps_with_priors: tuple[float, ...]
    state: Statevector


def default_penalty_weight(
    geometry: LatticeGeometry, u_over_t: float, n_up: int, n_down: int
) -> float:
    """3x the exact sector spectral range, or 10.0 for trivial sectors."""
    basis = sector_basis(geometry, n_up, n_down)
    spectrum = exact_spectrum(geometry, u_over_t, n_up, n_down, k=basis.dim)
    spread = spectrum.energies[-1] - spectrum.energies[0]
    return 3.0 * spread if spread > 1e-9 else 10.0


def solve_level(
    geometry: LatticeGeometry,
    u_over_t: float,
    n_up: int,
    n_down: int,
    level: int,
    config: AnsatzConfig = AnsatzConfig(),
    schedule: OptimizerSchedule = OptimizerSchedule(),
    priors: list[Statevector] | tuple = (),
    penalty_weight: float | None = None,
    trace: list | None = None,
) -> VqeResult:
    """Best-of-restarts VQE for one energy level of one sector.

    Levels must be solved in order: level k needs the k converged states
    of levels 0..k-1 as priors for the orthogonality penalty.
    """
    if level < 0:
        raise ValueError(f"level must be >= 0, got {level}")
    priors = list(priors)
    if len(priors) != level:
        raise LevelOrderError(
            f"level {level} needs exactly {level} prior states, got {len(priors)}"
        )
    dim = sector_basis(geometry, n_up, n_down).dim
    if level >= dim:
        raise LevelOrderError(
            f"level {level} does not exist in a dimension-{dim} sector"
        )
    if penalty_weight is None:
        penalty_weight = default_penalty_weight(geometry, u_over_t, n_up, n_down)

    circuit = build_ansatz(geometry, n_up, n_down, config)
    spec = ObjectiveSpec(circuit, hubbard_pauli_sum(geometry, u_over_t), priors, penalty_weight)
    operator = spec.operator()

    runs = []
    finals = []
    for restart in range(schedule.restarts):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=schedule.seed, spawn_key=(level, restart))
        )
        x0 = rng.uniform(-0.1, 0.1, circuit.n_params)
        x1, _ = stage1_minimize(
            lambda x: objective_value(spec, x), x0, schedule.stage1_iters, trace=trace
        )
        x2, _ = stage2_minimize(
            lambda x: objective_value(spec, x), x1, schedule.stage2_iters, trace=trace
        )
        state = run_circuit(circuit, x2)
        runs.append(expectation(state, operator))
        finals.append((x2, state))

    best = int(np.argmin(runs))
    best_params, best_state = finals[best]
    overlaps = tuple(abs(overlap(prior, best_state)) for prior in priors)
    return VqeResult(
        level=level,
        energy=runs[best],
        params=best_params,
        runs=tuple(runs),
        mean=float(np.mean(runs)),
        std_dev=float(np.std(runs)),
        overlaps_with_priors=overlaps,
        state=best_state,
    )


def solve_levels(
    geometry: LatticeGeometry,
    u_over_t: float,
    n_up: int,
    n_down: int,
    max_level: int,
    config: AnsatzConfig = AnsatzConfig(),
    schedule: OptimizerSchedule = OptimizerSchedule(),
    trace: list | None = None,
) -> list[VqeResult]:
    """Solve levels 0..max_level in order, chaining deflation priors."""
    results: list[VqeResult] = []
    priors: list[Statevector] = []
    for level in range(max_level + 1):
        result = solve_level(
            geometry, u_over_t, n_up, n_down, level,
            config=config, schedule=schedule, priors=priors, trace=trace,
        )
        results.append(result)
        priors.append(result.state)
    return results
