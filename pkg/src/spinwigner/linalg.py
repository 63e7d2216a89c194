"""Dense complex linear algebra used by every other module.

Kronecker products, partial traces over single qubits, Hermitian
eigendecompositions and PSD matrix square roots.  Matrices are plain
complex ndarrays; qubit 0 is the leftmost symbol of a ket label, so the
basis index is the big-endian reading of the bit string.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NotHermitianError, NotPSDError, ShapeError

#: Largest matrix dimension any operation will produce (2**12).
MAX_DIM = 4096

#: Max-abs deviation tolerated when validating Hermiticity.
HERM_TOL = 1e-10

#: Eigenvalues above -PSD_TOL count as roundoff and are clamped to zero.
PSD_TOL = 1e-10


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex ndarray."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ShapeError("matrix entries must be finite")
    return a


def require_hermitian(m, tol: float = HERM_TOL) -> np.ndarray:
    """Validate that ``m`` is square and Hermitian within ``tol`` (max-abs)."""
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    deviation = float(np.max(np.abs(a - a.conj().T)))
    if deviation > tol:
        raise NotHermitianError(
            f"matrix deviates from Hermiticity by {deviation:.3e} (tolerance {tol:g})"
        )
    return a


def tensor(a, b, max_dim: int = MAX_DIM) -> np.ndarray:
    """Kronecker product a ⊗ b.

    Block (i, j) of the result equals a[i, j]·b.  Raises ShapeError if the
    result would exceed ``max_dim`` in either dimension.
    """
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > max_dim or cols > max_dim:
        raise ShapeError(
            f"tensor product would be {rows}x{cols}, above the {max_dim} limit"
        )
    return np.kron(a, b)


def tensor_power(m, n: int, max_dim: int = MAX_DIM) -> np.ndarray:
    """n-fold Kronecker power m ⊗ m ⊗ ... ⊗ m (left-associated)."""
    if n < 1:
        raise ValueError(f"tensor power requires n >= 1, got {n}")
    acc = as_complex_matrix(m)
    for _ in range(n - 1):
        acc = tensor(acc, m, max_dim=max_dim)
    return acc


def partial_trace(rho, n_qubits: int, traced_qubit: int) -> np.ndarray:
    """Trace out one qubit of an n-qubit operator.

    Returns the 2^(n-1) x 2^(n-1) reduced operator over the remaining
    qubits, which keep their relative order.  Trace and Hermiticity of the
    input are preserved.
    """
    rho = as_complex_matrix(rho)
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    dim = 2 ** n_qubits
    if rho.shape != (dim, dim):
        raise ShapeError(
            f"expected a {dim}x{dim} matrix for {n_qubits} qubits, got {rho.shape}"
        )
    if not 0 <= traced_qubit < n_qubits:
        raise ValueError(
            f"traced_qubit must be in [0, {n_qubits}), got {traced_qubit}"
        )
    tensor_form = rho.reshape((2,) * (2 * n_qubits))
    reduced = np.trace(tensor_form, axis1=traced_qubit, axis2=n_qubits + traced_qubit)
    half = dim // 2
    return reduced.reshape(half, half)


class HermitianEig(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` ascend; the columns of ``eigenvectors`` are the matching
    orthonormal eigenvectors, so V diag(w) V† reconstructs the input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def herm_eig(m) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix; validates Hermiticity first."""
    a = require_hermitian(m)
    eigenvalues, eigenvectors = np.linalg.eigh(a)
    return HermitianEig(eigenvalues, eigenvectors)


def sqrt_psd(m) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues in [-PSD_TOL, 0) count as roundoff and are clamped to zero
    before rooting; anything below -PSD_TOL raises NotPSDError.
    """
    eigenvalues, vectors = herm_eig(m)
    smallest = float(eigenvalues[0])
    if smallest < -PSD_TOL:
        raise NotPSDError(
            f"smallest eigenvalue {smallest:.3e} is below -{PSD_TOL:g}"
        )
    clamped = np.maximum(eigenvalues, 0.0)
    root = (vectors * np.sqrt(clamped)) @ vectors.conj().T
    return (root + root.conj().T) / 2
