"""Input-to-state encoding and the catalogue of reservoir starting states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qmath

INITIAL_STATE_TAGS = ("up", "same_random", "entangled", "mixed", "new_random")


@dataclass(frozen=True)
class InitialStateKind:
    """Which starting state a drive scheme loads before feeding inputs.

    ``seed`` is only consumed by the random kinds: ``same_random`` resolves to
    one fixed matrix per seed (reused by every restart), while ``new_random``
    resamples from the caller's generator on every restart.
    """

    tag: str
    seed: int = 0

    def __post_init__(self) -> None:
        if self.tag not in INITIAL_STATE_TAGS:
            raise ValueError(
                f"unknown initial state {self.tag!r}; expected one of {INITIAL_STATE_TAGS}"
            )


# Fixed matrix per (seed, n_qubits); populated once, read-only afterwards.
_SAME_RANDOM_CACHE: dict[tuple[int, int], np.ndarray] = {}


def encode_input(u: float) -> np.ndarray:
    """Single-qubit amplitude encoding of an input value in [-1, 1].

    Out-of-range inputs are rejected rather than clipped; normalization into
    [-1, 1] is the task generator's job.
    """
    if not -1.0 <= u <= 1.0:
        raise ValueError(f"input {u} outside [-1, 1]")
    return np.array(
        [np.sqrt((1.0 - u) / 2.0), np.sqrt((1.0 + u) / 2.0)], dtype=np.complex128
    )


def initial_state(
    kind: InitialStateKind, n_qubits: int, rng: np.random.Generator | None = None
) -> np.ndarray:
    """Density matrix for the requested starting state of an n-qubit reservoir."""
    dim = 2**n_qubits
    if kind.tag == "up":
        return qmath.outer(qmath.basis_state(0, dim))
    if kind.tag == "entangled":
        if n_qubits != 4:
            raise ValueError("the entangled (GHZ) starting state is defined for 4 qubits only")
        psi = (qmath.basis_state(0, dim) + qmath.basis_state(dim - 1, dim)) / np.sqrt(2)
        return qmath.outer(psi)
    if kind.tag == "mixed":
        return np.eye(dim, dtype=np.complex128) / dim
    if kind.tag == "same_random":
        key = (kind.seed, n_qubits)
        if key not in _SAME_RANDOM_CACHE:
            fixed_rng = np.random.default_rng(kind.seed)
            _SAME_RANDOM_CACHE[key] = qmath.random_density_matrix(n_qubits, fixed_rng)
        return _SAME_RANDOM_CACHE[key]
    # new_random
    if rng is None:
        raise ValueError("new_random starting state needs an explicit rng")
    return qmath.random_density_matrix(n_qubits, rng)
