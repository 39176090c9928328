"""Drive schemes: the quadratic (full-history) and linear (reset-length) algorithms.

Both schemes feed a scalar input series into a reservoir model one clock cycle
per input, reading out the observable expectations after every segment. The
quadratic scheme reinitializes with the entire history before each output (a
hardware cost of M(M+1)/2 input insertions); the linear scheme reinitializes
with only the last ``reset_length`` inputs (cost reset_length per output).

Because expectation values are linear in the density matrix, measurement
collapse has no effect on the simulated numbers: the quadratic scheme is
computed in a single O(M) sequential pass while its reported hardware cost
keeps the quadratic bookkeeping. The linear scheme's restarts are independent
per output row and are processed as batches.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import qmath
from .encode import InitialStateKind, encode_input, initial_state
from .reservoir import ReservoirModel

FEATURE_BOUND_TOL = 1e-9
_CHUNK_ROWS = 4096


@dataclass
class StateMatrix:
    """Recorded reservoir readouts: one row per input step, bias column last.

    ``steps`` holds the 1-based input indices the rows correspond to; all
    non-bias entries are Pauli-Z expectations and therefore lie in [-1, 1].
    """

    values: np.ndarray
    steps: np.ndarray

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def feature_count(self) -> int:
        return self.values.shape[1] - 1

    def features(self) -> np.ndarray:
        """The non-bias columns."""
        return self.values[:, :-1]

    def slice_rows(self, start: int, stop: int) -> "StateMatrix":
        """Row window as a new StateMatrix (views into the same arrays)."""
        return StateMatrix(values=self.values[start:stop], steps=self.steps[start:stop])

    def to_csv(self, path: str | Path) -> None:
        header = ",".join(["step"] + [f"f{i}" for i in range(self.feature_count)] + ["bias"])
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(header + "\n")
            for step, row in zip(self.steps, self.values):
                fh.write(",".join([str(int(step))] + [f"{v:.17g}" for v in row]) + "\n")


@dataclass
class RunStats:
    """Hardware-cost bookkeeping for one driver run.

    ``physical_unitary_count`` counts the clock-cycle input insertions a
    hardware execution would need; ``wall_segments_applied`` counts the matrix
    conjugations the simulator actually performed.
    """

    physical_unitary_count: int
    wall_segments_applied: int


def inject(rho: np.ndarray, u: float) -> np.ndarray:
    """Overwrite the first qubit with the encoded input: |psi(u)><psi(u)| ⊗ Tr_1(rho)."""
    return qmath.kron(qmath.outer(encode_input(u)), qmath.partial_trace_first(rho))


def regularize_by_noise(s: StateMatrix, sigma: float, rng: np.random.Generator) -> StateMatrix:
    """Add i.i.d. Gaussian noise to all non-bias entries (bias column untouched)."""
    if sigma < 0:
        raise ValueError("noise sigma must be non-negative")
    values = s.values.copy()
    if sigma > 0:
        values[:, :-1] += rng.normal(0.0, sigma, size=(s.rows, s.feature_count))
    return StateMatrix(values=values, steps=s.steps.copy())


def _check_inputs(inputs: np.ndarray) -> np.ndarray:
    inputs = np.asarray(inputs, dtype=np.float64)
    if inputs.ndim != 1 or inputs.size == 0:
        raise ValueError("input series must be a non-empty 1-d array")
    bad = np.abs(inputs) > 1.0
    if np.any(bad):
        raise ValueError(f"{int(bad.sum())} input values outside [-1, 1]; encode does not clip")
    return inputs


def _inject_batch(rhos: np.ndarray, us: np.ndarray) -> np.ndarray:
    """Batched first-qubit overwrite for a stack of density matrices."""
    batch, dim, _ = rhos.shape
    half = dim // 2
    reduced = np.einsum("baiaj->bij", rhos.reshape(batch, 2, half, 2, half))
    amps = np.empty((batch, 2))
    amps[:, 0] = np.sqrt((1.0 - us) / 2.0)
    amps[:, 1] = np.sqrt((1.0 + us) / 2.0)
    enc = amps[:, :, None] * amps[:, None, :]
    out = np.einsum("bpq,bij->bpiqj", enc.astype(np.complex128), reduced)
    return out.reshape(batch, dim, dim)


def _conjugate(u: np.ndarray, rhos: np.ndarray) -> np.ndarray:
    """u rho u† applied to a stack (or a single matrix)."""
    return np.matmul(np.matmul(u, rhos), u.conj().T)


def _check_feature_bounds(values: np.ndarray) -> None:
    worst = float(np.max(np.abs(values))) if values.size else 0.0
    if worst > 1.0 + FEATURE_BOUND_TOL:
        raise ValueError(f"Z expectation {worst} escapes [-1, 1] beyond tolerance")


def run_qcqa(
    model: ReservoirModel,
    inputs: np.ndarray,
    init: InitialStateKind,
    washout: int,
    rng: np.random.Generator | None = None,
    validate_every: int = 0,
) -> tuple[StateMatrix, RunStats]:
    """Quadratic scheme: the state carries the entire input history.

    Row for input i holds the observable expectations after each segment of
    input i's clock cycle, with the state evolved from the initial state
    through u_1 ... u_i. Rows with index <= washout are dropped.
    """
    inputs = _check_inputs(inputs)
    m = inputs.size
    if not 0 <= washout < m:
        raise ValueError(f"washout {washout} must lie in [0, {m})")
    obs = np.stack(model.observables)
    rho = initial_state(init, model.n_qubits, rng)
    rows = m - washout
    feats = np.empty((rows, len(model.segments), obs.shape[0]))
    applied = 0
    for i, u in enumerate(inputs, start=1):
        rho = inject(rho, u)
        record = i > washout
        for s, seg in enumerate(model.segments):
            rho = _conjugate(seg, rho)
            applied += 1
            if record:
                feats[i - washout - 1, s, :] = np.einsum("oij,ji->o", obs, rho).real
        if validate_every and i % validate_every == 0:
            qmath.check_density_matrix(rho)
    flat = feats.reshape(rows, -1)
    _check_feature_bounds(flat)
    values = np.concatenate([flat, np.ones((rows, 1))], axis=1)
    steps = np.arange(washout + 1, m + 1, dtype=np.int64)
    stats = RunStats(
        physical_unitary_count=m * (m + 1) // 2,
        wall_segments_applied=applied,
    )
    return StateMatrix(values=values, steps=steps), stats


def _initial_batch(
    init: InitialStateKind,
    n_qubits: int,
    row_seeds: np.ndarray | None,
    batch: int,
) -> np.ndarray:
    if init.tag == "new_random":
        assert row_seeds is not None
        return np.stack(
            [
                qmath.random_density_matrix(n_qubits, np.random.default_rng(int(seed)))
                for seed in row_seeds
            ]
        )
    rho0 = initial_state(init, n_qubits)
    return np.broadcast_to(rho0, (batch, *rho0.shape)).copy()


def run_lcqa(
    model: ReservoirModel,
    inputs: np.ndarray,
    reset_length: int,
    init: InitialStateKind,
    washout: int,
    rng: np.random.Generator | None = None,
    validate_every: int = 0,
) -> tuple[StateMatrix, RunStats]:
    """Linear scheme: each output restarts from the initial state and replays
    only the last ``reset_length`` inputs.

    Requires washout >= reset_length so that every recorded row has a full
    window. The one exception is reset_length >= len(inputs): there the window
    is the entire available history for every row, which coincides with the
    quadratic scheme by definition, so any washout is accepted.

    For the ``new_random`` starting state one seed per output row is drawn
    from ``rng`` up front, so results do not depend on batch partitioning.
    """
    inputs = _check_inputs(inputs)
    m = inputs.size
    if reset_length < 1:
        raise ValueError("reset length must be at least 1")
    if not 0 <= washout < m:
        raise ValueError(f"washout {washout} must lie in [0, {m})")
    if washout < reset_length and reset_length < m:
        raise ValueError(
            f"washout {washout} < reset length {reset_length}: first recorded row "
            "would not have a full input window"
        )
    if init.tag == "new_random" and rng is None:
        raise ValueError("new_random starting state needs an explicit rng")

    steps = np.arange(washout + 1, m + 1, dtype=np.int64)
    rows = steps.size
    window_lengths = np.minimum(steps, reset_length)
    row_seeds = (
        rng.integers(0, 2**63 - 1, size=rows) if init.tag == "new_random" else None
    )

    obs = np.stack(model.observables)
    cycle = model.cycle_unitary
    n_seg = len(model.segments)
    feats = np.empty((rows, n_seg, obs.shape[0]))
    applied = 0
    insertions = 0  # input insertions so far, across the whole batch

    def spot_check(rho: np.ndarray, before: int, after: int) -> None:
        if validate_every and before // validate_every != after // validate_every:
            qmath.check_density_matrix(rho)

    # Rows sharing a window length evolve in lockstep and are batched together.
    for length in np.unique(window_lengths):
        (group,) = np.nonzero(window_lengths == length)
        for chunk_start in range(0, group.size, _CHUNK_ROWS):
            chunk = group[chunk_start : chunk_start + _CHUNK_ROWS]
            batch = chunk.size
            starts = steps[chunk] - length  # 0-based index of first window input
            rhos = _initial_batch(
                init,
                model.n_qubits,
                row_seeds[chunk] if row_seeds is not None else None,
                batch,
            )
            for t in range(length - 1):
                rhos = _inject_batch(rhos, inputs[starts + t])
                rhos = _conjugate(cycle, rhos)
                applied += batch
                spot_check(rhos[0], insertions, insertions + batch)
                insertions += batch
            rhos = _inject_batch(rhos, inputs[starts + length - 1])
            for s, seg in enumerate(model.segments):
                rhos = _conjugate(seg, rhos)
                applied += batch
                feats[chunk, s, :] = np.einsum("oij,bji->bo", obs, rhos).real
            spot_check(rhos[0], insertions, insertions + batch)
            insertions += batch

    flat = feats.reshape(rows, -1)
    _check_feature_bounds(flat)
    values = np.concatenate([flat, np.ones((rows, 1))], axis=1)
    stats = RunStats(
        physical_unitary_count=int(window_lengths.sum()),
        wall_segments_applied=applied,
    )
    return StateMatrix(values=values, steps=steps), stats
