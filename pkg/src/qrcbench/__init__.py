"""Deterministic simulator and benchmark harness for memory-restricted
quantum reservoir computing."""

__version__ = "0.1.0"

from .config import ExperimentConfig, load_config, preset_config, stable_seed
from .driver import RunStats, StateMatrix, inject, regularize_by_noise, run_lcqa, run_qcqa
from .encode import InitialStateKind, encode_input, initial_state
from .ipc import (
    IpcReport,
    ThresholdRule,
    compute_ipc,
    delay_combinations,
    initial_state_metrics,
    legendre,
    partitions,
    target_series,
)
from .readout import ReadoutWeights, capacity, nrmse, predict, train_ridge
from .reservoir import (
    CircuitParams,
    IsingParams,
    ReservoirModel,
    build_circuit_model,
    build_ising_hamiltonian,
    build_ising_model,
    two_qubit_phase_gate,
)
from .tasks import LorenzParams, TaskDataset, lorenz_series, make_lorenz_task, uniform_input

__all__ = [
    "__version__",
    "ExperimentConfig",
    "load_config",
    "preset_config",
    "stable_seed",
    "RunStats",
    "StateMatrix",
    "inject",
    "regularize_by_noise",
    "run_lcqa",
    "run_qcqa",
    "InitialStateKind",
    "encode_input",
    "initial_state",
    "IpcReport",
    "ThresholdRule",
    "compute_ipc",
    "delay_combinations",
    "initial_state_metrics",
    "legendre",
    "partitions",
    "target_series",
    "ReadoutWeights",
    "capacity",
    "nrmse",
    "predict",
    "train_ridge",
    "CircuitParams",
    "IsingParams",
    "ReservoirModel",
    "build_circuit_model",
    "build_ising_hamiltonian",
    "build_ising_model",
    "two_qubit_phase_gate",
    "LorenzParams",
    "TaskDataset",
    "lorenz_series",
    "make_lorenz_task",
    "uniform_input",
]
