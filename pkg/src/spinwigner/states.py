"""GHZ and W state construction, density matrices, and basis probabilities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPSDError, NumericValidationError, ShapeError
from .linalg import HERM_TOL, PSD_TOL, require_hermitian

#: |Σ|amplitude|² - 1| tolerated for a Ket.
KET_NORM_TOL = 1e-12

#: |Tr ρ - 1| tolerated for a DensityMatrix.
TRACE_TOL = 1e-10

#: Probability vectors must sum to 1 within this tolerance.
PROB_SUM_TOL = 1e-10

MIN_QUBITS = 2
MAX_QUBITS = 12


def n_qubits_for_dim(dim: int) -> int:
    """Number of qubits for a Hilbert-space dimension; ShapeError if not 2^n."""
    n = max(int(dim).bit_length() - 1, 0)
    if dim < 1 or 2 ** n != dim:
        raise ShapeError(f"dimension {dim} is not a power of two")
    return n


def basis_labels(n_qubits: int) -> tuple[str, ...]:
    """Zero-padded big-endian bit strings '00…0' … '11…1'."""
    return tuple(format(i, f"0{n_qubits}b") for i in range(2 ** n_qubits))


@dataclass(frozen=True)
class Ket:
    """Normalized pure state over the 2^n computational basis.

    Validated once at construction: length 2^n, finite entries, unit norm
    within KET_NORM_TOL.  The amplitude array is frozen (read-only).
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1:
            raise ShapeError(f"amplitudes must be a 1-D vector, got shape {amps.shape}")
        n_qubits_for_dim(amps.size)
        if not np.all(np.isfinite(amps)):
            raise ShapeError("amplitudes must be finite")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > KET_NORM_TOL:
            raise NumericValidationError(
                f"squared norm is {norm_sq!r}, expected 1 within {KET_NORM_TOL:g}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def n_qubits(self) -> int:
        return n_qubits_for_dim(self.dim)


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density operator: Hermitian, unit trace, PSD.

    All invariants are checked once at construction so downstream loops can
    assume a well-formed operator without re-validating.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError(f"expected a square matrix, got shape {m.shape}")
        n_qubits_for_dim(m.shape[0])
        require_hermitian(m, tol=HERM_TOL)
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > TRACE_TOL:
            raise NumericValidationError(
                f"trace is {trace!r}, expected 1 within {TRACE_TOL:g}"
            )
        smallest = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
        if smallest < -PSD_TOL:
            raise NotPSDError(
                f"smallest eigenvalue {smallest:.3e} is below -{PSD_TOL:g}"
            )
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return n_qubits_for_dim(self.dim)


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Computational-basis outcome probabilities with their bit-string labels."""

    labels: tuple[str, ...]
    probabilities: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probabilities, dtype=float)
        if probs.ndim != 1 or probs.size != len(self.labels):
            raise ShapeError(
                f"{len(self.labels)} labels but probability shape {probs.shape}"
            )
        if float(probs.min(initial=0.0)) < -PSD_TOL:
            raise NumericValidationError(
                f"negative probability {probs.min():.3e} beyond tolerance"
            )
        probs = np.maximum(probs, 0.0)
        total = float(probs.sum())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise NumericValidationError(
                f"probabilities sum to {total!r}, expected 1 within {PROB_SUM_TOL:g}"
            )
        probs.flags.writeable = False
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "labels", tuple(self.labels))


def _check_qubit_count(n: int) -> None:
    if not MIN_QUBITS <= n <= MAX_QUBITS:
        raise ValueError(
            f"qubit count must be in [{MIN_QUBITS}, {MAX_QUBITS}], got {n}"
        )


def ghz_state(n: int) -> Ket:
    """(|0…0⟩ + |1…1⟩)/√2 on n qubits."""
    _check_qubit_count(n)
    amps = np.zeros(2 ** n, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return Ket(amps)


def w_state(n: int) -> Ket:
    """Equal superposition of the n single-excitation basis states."""
    _check_qubit_count(n)
    amps = np.zeros(2 ** n, dtype=complex)
    for bit in range(n):
        amps[1 << bit] = 1.0 / np.sqrt(n)
    return Ket(amps)


def ket_to_dm(psi: Ket) -> DensityMatrix:
    """Rank-1 projector |ψ⟩⟨ψ|."""
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()))


def probabilities(rho: DensityMatrix) -> ProbabilityDistribution:
    """Basis-outcome distribution: the real diagonal of the density matrix."""
    diag = np.real(np.diagonal(rho.matrix))
    return ProbabilityDistribution(basis_labels(rho.n_qubits), diag)
