"""Equal-angle spin Wigner functions on (θ, φ) grids.

Every qubit is probed along the same Bloch direction, so the phase space is
the single sphere (θ, φ) and the quasiprobability is
W(θ,φ) = Tr[ρ π(θ,φ)^⊗n] with the phase-point kernel
π(θ,φ) = ½(I + √3 n(θ,φ)·σ).  The kernel has one negative eigenvalue,
(1-√3)/2, which is what lets W dip below zero for nonclassical states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import InternalConsistencyError, ShapeError
from .noise import GaussianNoiseSpec, ensemble_average
from .states import DensityMatrix, Ket

#: Imaginary residue allowed on Tr[ρ π^⊗n] before it is treated as corruption.
IMAG_RESIDUE_TOL = 1e-10

#: Kernel spectrum {(1-√3)/2, (1+√3)/2}, fixed by the √3 normalization.
KERNEL_EIGENVALUES = ((1.0 - np.sqrt(3.0)) / 2.0, (1.0 + np.sqrt(3.0)) / 2.0)

#: Default 1° angular resolution, endpoints included.
DEFAULT_THETA_STEPS = 181
DEFAULT_PHI_STEPS = 361

#: Complex entries held per batched kernel-power chunk (~64 MB).
_CHUNK_ENTRIES = 4_000_000


@dataclass(frozen=True)
class KernelOperator:
    """Phase-point operator at one Bloch direction."""

    theta: float
    phi: float
    matrix: np.ndarray


@dataclass(frozen=True)
class WignerGrid:
    """Real Wigner values on a θ×φ lattice (theta-major layout)."""

    theta_values: np.ndarray
    phi_values: np.ndarray
    values: np.ndarray
    state_descriptor: str = ""
    noise_descriptor: str = ""

    def __post_init__(self):
        thetas = np.array(self.theta_values, dtype=float)
        phis = np.array(self.phi_values, dtype=float)
        vals = np.array(self.values, dtype=float)
        if vals.shape != (thetas.size, phis.size):
            raise ShapeError(
                f"values shape {vals.shape} does not match "
                f"{thetas.size} theta x {phis.size} phi points"
            )
        if not (np.all(np.isfinite(thetas)) and np.all(np.isfinite(phis))
                and np.all(np.isfinite(vals))):
            raise ShapeError("grid angles and values must be finite")
        for arr in (thetas, phis, vals):
            arr.flags.writeable = False
        object.__setattr__(self, "theta_values", thetas)
        object.__setattr__(self, "phi_values", phis)
        object.__setattr__(self, "values", vals)


def _kernel_matrices(theta, phi) -> np.ndarray:
    """Kernel matrices ½(I + √3 n·σ) for broadcastable angle arrays."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    shape = np.broadcast(theta, phi).shape
    sqrt3 = np.sqrt(3.0)
    cos_t = np.cos(theta)
    off_diag = (sqrt3 / 2.0) * np.sin(theta) * np.exp(-1j * phi)
    out = np.empty(shape + (2, 2), dtype=complex)
    out[..., 0, 0] = (1.0 + sqrt3 * cos_t) / 2.0
    out[..., 1, 1] = (1.0 - sqrt3 * cos_t) / 2.0
    out[..., 0, 1] = off_diag
    out[..., 1, 0] = np.conj(off_diag)
    return out


def kernel(theta: float, phi: float) -> KernelOperator:
    """Phase-point operator π(θ,φ); angles wrap by trig periodicity."""
    if not (np.isfinite(theta) and np.isfinite(phi)):
        raise ValueError(f"angles must be finite, got theta={theta}, phi={phi}")
    return KernelOperator(float(theta), float(phi), _kernel_matrices(theta, phi))


def _tensor_power_batch(kernels: np.ndarray, n_qubits: int) -> np.ndarray:
    """n-fold Kronecker power of a (..., 2, 2) batch of kernels."""
    acc = kernels
    for _ in range(n_qubits - 1):
        d = acc.shape[-1]
        acc = np.einsum("...ij,...kl->...ikjl", acc, kernels).reshape(
            *kernels.shape[:-2], 2 * d, 2 * d
        )
    return acc


def _require_real(value: complex) -> float:
    if abs(value.imag) > IMAG_RESIDUE_TOL:
        raise InternalConsistencyError(
            f"Wigner value has imaginary residue {value.imag:.3e} "
            f"(tolerance {IMAG_RESIDUE_TOL:g}); non-Hermitian input?"
        )
    return float(value.real)


def _check_state_dim(rho: DensityMatrix, n_qubits: int) -> None:
    if rho.dim != 2 ** n_qubits:
        raise ShapeError(
            f"density matrix dimension {rho.dim} does not match "
            f"{n_qubits} qubits (expected {2 ** n_qubits})"
        )


def wigner_ea(rho: DensityMatrix, n_qubits: int, theta: float, phi: float) -> float:
    """Equal-angle Wigner value W(θ,φ) = Tr[ρ π(θ,φ)^⊗n]."""
    _check_state_dim(rho, n_qubits)
    probe = linalg.tensor_power(kernel(theta, phi).matrix, n_qubits)
    # Tr(ρ·K) = Σ_ij ρ_ij K_ji, an O(d²) contraction.
    return _require_real(complex(np.sum(rho.matrix * probe.T)))


def wigner_grid(
    rho: DensityMatrix,
    n_qubits: int,
    theta_steps: int = DEFAULT_THETA_STEPS,
    phi_steps: int = DEFAULT_PHI_STEPS,
    *,
    state_descriptor: str = "",
    noise_descriptor: str = "",
) -> WignerGrid:
    """Wigner values on the uniform grid θ ∈ [0, π], φ ∈ [0, 2π].

    Grid points are θ_i = i·π/(theta_steps-1), φ_j = j·2π/(phi_steps-1),
    endpoints included; values are laid out theta-major.
    """
    _check_state_dim(rho, n_qubits)
    if theta_steps < 2 or phi_steps < 2:
        raise ValueError(
            f"need at least 2 steps per axis, got {theta_steps} x {phi_steps}"
        )
    thetas = np.linspace(0.0, np.pi, theta_steps)
    phis = np.linspace(0.0, 2.0 * np.pi, phi_steps)
    theta_flat = np.repeat(thetas, phi_steps)
    phi_flat = np.tile(phis, theta_steps)

    total = theta_flat.size
    dim = rho.dim
    chunk = max(1, _CHUNK_ENTRIES // (dim * dim))
    values = np.empty(total, dtype=float)
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        kernels = _kernel_matrices(theta_flat[start:stop], phi_flat[start:stop])
        probes = _tensor_power_batch(kernels, n_qubits)
        traces = np.einsum("ij,cji->c", rho.matrix, probes)
        residue = float(np.max(np.abs(traces.imag)))
        if residue > IMAG_RESIDUE_TOL:
            raise InternalConsistencyError(
                f"Wigner grid has imaginary residue {residue:.3e} "
                f"(tolerance {IMAG_RESIDUE_TOL:g}); non-Hermitian input?"
            )
        values[start:stop] = traces.real

    return WignerGrid(
        theta_values=thetas,
        phi_values=phis,
        values=values.reshape(theta_steps, phi_steps),
        state_descriptor=state_descriptor,
        noise_descriptor=noise_descriptor,
    )


def wigner_grid_ensemble(
    psi: Ket,
    spec: GaussianNoiseSpec,
    theta_steps: int = DEFAULT_THETA_STEPS,
    phi_steps: int = DEFAULT_PHI_STEPS,
    *,
    state_descriptor: str = "",
    noise_descriptor: str = "",
) -> WignerGrid:
    """Ensemble-averaged Wigner grid under Gaussian amplitude perturbation.

    Averaging commutes with the trace, so the mean state ρ̄ is formed once
    and evaluated on the grid a single time.
    """
    rho = ensemble_average(psi, spec)
    return wigner_grid(
        rho,
        psi.n_qubits,
        theta_steps,
        phi_steps,
        state_descriptor=state_descriptor,
        noise_descriptor=noise_descriptor,
    )
