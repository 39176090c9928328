"""Reservoir models: per-input unitary segments plus a measurement plan.

Both reservoirs expose the same shape: an ordered list of segment unitaries
that together make up one clock cycle, and a list of observables measured
after every segment (time multiplexing). Qubit positions are 1-based with
qubit 1 the most significant (leftmost) Kronecker factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import qmath


@dataclass
class IsingParams:
    """Fully connected transverse-field Ising reservoir parameters.

    ``couplings`` may be given explicitly (symmetric matrix, upper triangle
    used); otherwise it is sampled i.i.d. uniform on [coupling_lo, coupling_hi]
    from ``coupling_seed``.
    """

    n_qubits: int = 4
    field_strength: float = 0.5
    clock_cycle: float = 20.0
    virtual_nodes: int = 30
    coupling_seed: int = 0
    coupling_lo: float = 0.25
    coupling_hi: float = 0.75
    couplings: np.ndarray | None = None


@dataclass
class CircuitParams:
    """Random-circuit reservoir parameters (two alternating sublayers)."""

    n_qubits: int = 4
    repetitions: int = 10
    param_lo: float = 0.1
    param_hi: float = 0.2
    gate_seed: int = 0


@dataclass
class ReservoirModel:
    """An ordered list of segment unitaries and the observables read out after each."""

    n_qubits: int
    segments: list[np.ndarray]
    observables: list[np.ndarray]
    measure_after_each_segment: bool = True
    _cycle_unitary: np.ndarray | None = field(default=None, repr=False)

    @property
    def feature_count(self) -> int:
        return len(self.segments) * len(self.observables)

    @property
    def cycle_unitary(self) -> np.ndarray:
        """Product of all segments: the full one-input evolution operator."""
        if self._cycle_unitary is None:
            u = np.eye(2**self.n_qubits, dtype=np.complex128)
            for seg in self.segments:
                u = seg @ u
            self._cycle_unitary = u
        return self._cycle_unitary

    def validate(self, tol: float = qmath.UNITARITY_TOL) -> None:
        """Raise unless every segment is unitary within tolerance."""
        for idx, seg in enumerate(self.segments):
            if not qmath.is_unitary(seg, tol):
                raise ValueError(f"segment {idx} is not unitary within {tol:.1e}")


def pauli_at(sigma: np.ndarray, position: int, n_qubits: int) -> np.ndarray:
    """Embed a 1-qubit operator at a 1-based qubit position of an n-qubit register."""
    if not 1 <= position <= n_qubits:
        raise ValueError(f"qubit position {position} out of range 1..{n_qubits}")
    op = np.eye(1, dtype=np.complex128)
    for k in range(1, n_qubits + 1):
        op = np.kron(op, sigma if k == position else qmath.IDENTITY_2)
    return op


def sample_couplings(p: IsingParams) -> np.ndarray:
    """Symmetric coupling matrix with the upper triangle drawn i.i.d. uniform."""
    rng = np.random.default_rng(p.coupling_seed)
    j = np.zeros((p.n_qubits, p.n_qubits))
    for a in range(p.n_qubits):
        for b in range(a + 1, p.n_qubits):
            j[a, b] = j[b, a] = rng.uniform(p.coupling_lo, p.coupling_hi)
    return j


def build_ising_hamiltonian(p: IsingParams) -> np.ndarray:
    """H = sum_{i<j} J_ij X_i X_j + sum_i h Z_i on the full register."""
    couplings = p.couplings if p.couplings is not None else sample_couplings(p)
    dim = 2**p.n_qubits
    h = np.zeros((dim, dim), dtype=np.complex128)
    for a in range(1, p.n_qubits + 1):
        for b in range(a + 1, p.n_qubits + 1):
            j_ab = couplings[a - 1, b - 1]
            if j_ab != 0.0:
                h += j_ab * (pauli_at(qmath.SIGMA_X, a, p.n_qubits)
                             @ pauli_at(qmath.SIGMA_X, b, p.n_qubits))
        h += p.field_strength * pauli_at(qmath.SIGMA_Z, a, p.n_qubits)
    return h


def build_ising_model(p: IsingParams) -> ReservoirModel:
    """Time-multiplexed Ising reservoir: virtual_nodes equal slices of one clock cycle.

    Each segment is exp(-i H theta) with theta = clock_cycle / virtual_nodes, so
    the product of all segments is the full-cycle operator exp(-i H T).
    """
    hamiltonian = build_ising_hamiltonian(p)
    theta = p.clock_cycle / p.virtual_nodes
    segment = qmath.unitary_evolution(hamiltonian, theta)
    observables = [pauli_at(qmath.SIGMA_Z, q, p.n_qubits) for q in range(1, p.n_qubits + 1)]
    model = ReservoirModel(
        n_qubits=p.n_qubits,
        segments=[segment] * p.virtual_nodes,
        observables=observables,
    )
    model.validate()
    return model


def two_qubit_phase_gate(
    a: float, b: float, c: float, k: int, l: int, n_qubits: int
) -> np.ndarray:
    """exp(i (a X_k X_l + b Y_k Y_l + c Z_k Z_l)) embedded in the full register."""
    if k == l:
        raise ValueError("two-qubit gate needs two distinct qubits")
    generator = (
        a * pauli_at(qmath.SIGMA_X, k, n_qubits) @ pauli_at(qmath.SIGMA_X, l, n_qubits)
        + b * pauli_at(qmath.SIGMA_Y, k, n_qubits) @ pauli_at(qmath.SIGMA_Y, l, n_qubits)
        + c * pauli_at(qmath.SIGMA_Z, k, n_qubits) @ pauli_at(qmath.SIGMA_Z, l, n_qubits)
    )
    return qmath.unitary_evolution(-generator, 1.0)


def _haar_pair(k: int, l: int, n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    """Independent Haar 1-qubit unitaries on qubits k and l, identity elsewhere."""
    u = pauli_at(qmath.haar_random_1q(rng), k, n_qubits)
    return u @ pauli_at(qmath.haar_random_1q(rng), l, n_qubits)


def _dressed_gate(
    k: int, l: int, n_qubits: int, lo: float, hi: float, rng: np.random.Generator
) -> np.ndarray:
    a, b, c = rng.uniform(lo, hi, size=3)
    left = _haar_pair(k, l, n_qubits, rng)
    right = _haar_pair(k, l, n_qubits, rng)
    return left @ two_qubit_phase_gate(a, b, c, k, l, n_qubits) @ right


def build_circuit_model(p: CircuitParams, rng: np.random.Generator | None = None) -> ReservoirModel:
    """Random-circuit reservoir: sublayers W (qubit pairs (1,2),(3,4)) and V (pair (2,3)).

    One clock cycle applies [W, V] repeated ``repetitions`` times, with a
    measurement after every sublayer. With 4 qubits the V sublayer holds a
    single gate: the paper's pair index (2j, 2j+1) with j = 2 would need a
    fifth qubit, so there is no periodic wrap.
    """
    if p.n_qubits != 4:
        raise ValueError("the circuit reservoir is defined for 4 qubits")
    if rng is None:
        rng = np.random.default_rng(p.gate_seed)
    w1 = _dressed_gate(1, 2, p.n_qubits, p.param_lo, p.param_hi, rng)
    w2 = _dressed_gate(3, 4, p.n_qubits, p.param_lo, p.param_hi, rng)
    v1 = _dressed_gate(2, 3, p.n_qubits, p.param_lo, p.param_hi, rng)
    w_layer = w2 @ w1
    observables = [pauli_at(qmath.SIGMA_Z, q, p.n_qubits) for q in range(1, p.n_qubits + 1)]
    model = ReservoirModel(
        n_qubits=p.n_qubits,
        segments=[w_layer, v1] * p.repetitions,
        observables=observables,
    )
    model.validate()
    return model
