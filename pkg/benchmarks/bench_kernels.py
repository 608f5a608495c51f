#!/usr/bin/env python3
"""Benchmark the JIT statevector kernels against the pure-numpy fallback.

Runs the gate-program and Pauli-expectation kernels on random circuits at
a few register sizes and prints per-call times plus the speedup.  The
numpy path here is the exact code selected at import time by setting
HUBBARDVQE_NO_NUMBA=1.

Usage:
    python benchmarks/bench_kernels.py [--qubits 8,12,16] [--gates 200] [--repeats 20]
"""

import argparse
import time

import numpy as np

from hubbardvqe import kernels
from hubbardvqe.hamiltonian import hubbard_pauli_sum
from hubbardvqe.lattice import build_geometry


def random_program(n_qubits, n_gates, seed=0):
    rng = np.random.default_rng(seed)
    kinds = rng.integers(0, 6, n_gates).astype(np.int64)
    qas = np.empty(n_gates, dtype=np.int64)
    qbs = np.empty(n_gates, dtype=np.int64)
    for t in range(n_gates):
        qas[t], qbs[t] = rng.choice(n_qubits, size=2, replace=False)
    params = rng.uniform(-np.pi, np.pi, 2 * n_gates)
    p0 = np.arange(0, 2 * n_gates, 2, dtype=np.int64)
    p1 = np.arange(1, 2 * n_gates, 2, dtype=np.int64)
    return kinds, qas, qbs, p0, p1, params


def random_state(n_qubits, seed=1):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return (amps / np.linalg.norm(amps)).astype(np.complex128)


def time_call(fn, repeats):
    fn()  # warm up (JIT compile on the numba path)
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qubits", default="8,12,16")
    parser.add_argument("--gates", type=int, default=200)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    if not kernels.NUMBA_AVAILABLE:
        print("numba unavailable or disabled; nothing to compare")
        return

    sizes = [int(s) for s in args.qubits.split(",")]
    print(f"{'qubits':>6} {'kernel':>18} {'numpy':>12} {'numba':>12} {'speedup':>8}")
    for n in sizes:
        program = random_program(n, args.gates)
        base = random_state(n)

        def run(backend_fn):
            amps = base.copy()
            backend_fn(amps, *program)

        t_np = time_call(lambda: run(kernels.run_gate_program_numpy), args.repeats)
        t_nb = time_call(lambda: run(kernels.run_gate_program_numba), args.repeats)
        print(f"{n:>6} {'gate program':>18} {t_np*1e3:>10.3f}ms {t_nb*1e3:>10.3f}ms {t_np/t_nb:>7.1f}x")

        psum = hubbard_pauli_sum(build_geometry(1, n // 2), 2.0)
        masks = psum.masks()
        t_np = time_call(lambda: kernels.pauli_expectation_numpy(base, *masks), args.repeats)
        t_nb = time_call(lambda: kernels.pauli_expectation_numba(base, *masks), args.repeats)
        print(f"{n:>6} {'pauli expectation':>18} {t_np*1e3:>10.3f}ms {t_nb*1e3:>10.3f}ms {t_np/t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
