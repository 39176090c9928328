"""Dense complex linear algebra and quantum-state primitives for few-qubit systems.

Everything here operates on plain ``numpy`` arrays: operators are square
``complex128`` matrices, pure states are normalized complex vectors, and
density matrices are Hermitian positive semidefinite matrices with unit trace.
All functions are pure; randomness always comes from an explicitly passed
``numpy.random.Generator``.
"""

from __future__ import annotations

import numpy as np

# Validation tolerances. These are the single source of truth for the whole
# package; pass explicit values to the check functions to override locally.
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
EIGENVALUE_FLOOR = -1e-9
UNITARITY_TOL = 1e-10
NORM_TOL = 1e-12
IMAG_TRACE_TOL = 1e-9

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor as the most significant subsystem."""
    return np.kron(a, b)


def num_qubits(dim: int) -> int:
    """Number of qubits for a Hilbert-space dimension; rejects non powers of two."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def basis_state(index: int, dim: int) -> np.ndarray:
    """Computational basis vector |index> in a dim-dimensional space."""
    psi = np.zeros(dim, dtype=np.complex128)
    psi[index] = 1.0
    return psi


def outer(psi: np.ndarray) -> np.ndarray:
    """Projector |psi><psi| of a pure state vector."""
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


def is_unitary(u: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    d = u.shape[0]
    return bool(np.max(np.abs(dagger(u) @ u - np.eye(d))) <= tol)


def check_pure_state(psi: np.ndarray, tol: float = NORM_TOL) -> None:
    """Raise if psi is not a unit vector of power-of-two dimension."""
    psi = np.asarray(psi)
    num_qubits(psi.shape[0])
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state norm {norm} deviates from 1 by more than {tol}")


def check_density_matrix(
    rho: np.ndarray,
    herm_tol: float = HERMITICITY_TOL,
    trace_tol: float = TRACE_TOL,
    eig_floor: float = EIGENVALUE_FLOOR,
) -> None:
    """Raise ValueError unless rho is Hermitian, unit-trace and PSD within tolerance."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    num_qubits(rho.shape[0])
    herm_dev = np.max(np.abs(rho - dagger(rho)))
    if herm_dev > herm_tol:
        raise ValueError(f"Hermiticity deviation {herm_dev:.3e} exceeds {herm_tol:.1e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace {tr} deviates from 1 by more than {trace_tol:.1e}")
    min_eig = float(np.linalg.eigvalsh(rho).min())
    if min_eig < eig_floor:
        raise ValueError(f"minimum eigenvalue {min_eig:.3e} below {eig_floor:.1e}")


def partial_trace_first(rho: np.ndarray) -> np.ndarray:
    """Trace out the first (most significant) qubit of a multi-qubit density matrix."""
    dim = rho.shape[0]
    n = num_qubits(dim)
    if n < 2:
        raise ValueError("partial trace needs at least two qubits")
    half = dim // 2
    return np.einsum("aiaj->ij", rho.reshape(2, half, 2, half))


def hermitian_eig(h: np.ndarray, tol: float = HERMITICITY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues ascending and
    eigenvectors as columns, so that ``h = V @ diag(w) @ V†``.
    """
    h = np.asarray(h, dtype=np.complex128)
    dev = np.max(np.abs(h - dagger(h)))
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian: max |H - H†| = {dev:.3e}")
    w, v = np.linalg.eigh(h)
    return w, v


def unitary_evolution(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian h, via eigendecomposition."""
    w, v = hermitian_eig(h)
    return (v * np.exp(-1j * w * t)) @ dagger(v)


def expectation(rho: np.ndarray, obs: np.ndarray) -> float:
    """Re Tr(rho @ obs) for a Hermitian observable; asserts the trace is real."""
    if rho.shape != obs.shape:
        raise ValueError(f"dimension mismatch: state {rho.shape} vs observable {obs.shape}")
    tr = np.einsum("ij,ji->", rho, obs)
    if abs(tr.imag) >= IMAG_TRACE_TOL:
        raise ValueError(f"expectation has imaginary part {tr.imag:.3e}")
    return float(tr.real)


def haar_random_1q(rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed 2x2 unitary via QR of a complex Ginibre matrix.

    The R-diagonal phase correction makes the QR factorization unique and the
    resulting distribution exactly Haar.
    """
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    return q * (phases / np.abs(phases))


def random_density_matrix(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    """Random full-rank density matrix rho = G G† / Tr(G G†), G complex Ginibre."""
    dim = 2**n_qubits
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real
