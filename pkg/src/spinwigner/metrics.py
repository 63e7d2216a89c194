"""State-degradation metrics: Uhlmann-Jozsa fidelity and purity.

The general fidelity F(ρ,σ) = (Tr √(√ρ σ √ρ))² specializes to |⟨ψ|φ⟩|²
for two pure states and ⟨ψ|σ|ψ⟩ for a pure/mixed pair; ``fidelity``
dispatches to the cheapest applicable case.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg
from .errors import InternalConsistencyError, ShapeError
from .states import DensityMatrix, Ket

#: Eigenvalues of √ρ·σ·√ρ below this are numerical dust: they carry no
#: fidelity mass, but rooting them would inflate roundoff (√1e-15 ≈ 3e-8),
#: so they are zeroed before the square root.
EIGENVALUE_DUST = 1e-13

#: Fidelity may overshoot [0, 1] by at most this before it is an error.
OVERSHOOT_TOL = 1e-10


class FidelityCase(Enum):
    PURE_PURE = "pure_pure"
    PURE_MIXED = "pure_mixed"
    MIXED_MIXED = "mixed_mixed"


@dataclass(frozen=True)
class FidelityValue:
    """Fidelity in [0, 1] plus the formula that produced it."""

    value: float
    case_used: FidelityCase

    def __float__(self) -> float:
        return self.value


def _clamped(value: float, case: FidelityCase) -> FidelityValue:
    if value > 1.0 + OVERSHOOT_TOL or value < -OVERSHOOT_TOL:
        raise InternalConsistencyError(
            f"fidelity {value!r} lies outside [0, 1] beyond {OVERSHOOT_TOL:g}"
        )
    return FidelityValue(min(max(value, 0.0), 1.0), case)


def _check_dims(a_dim: int, b_dim: int) -> None:
    if a_dim != b_dim:
        raise ShapeError(f"state dimensions differ: {a_dim} vs {b_dim}")


def fidelity_pure_pure(psi: Ket, phi: Ket) -> FidelityValue:
    """|⟨ψ|φ⟩|²."""
    _check_dims(psi.dim, phi.dim)
    overlap = np.vdot(psi.amplitudes, phi.amplitudes)
    return _clamped(float(abs(overlap) ** 2), FidelityCase.PURE_PURE)


def fidelity_pure_mixed(psi: Ket, sigma: DensityMatrix) -> FidelityValue:
    """⟨ψ|σ|ψ⟩ (real by Hermiticity)."""
    _check_dims(psi.dim, sigma.dim)
    form = complex(np.vdot(psi.amplitudes, sigma.matrix @ psi.amplitudes))
    if abs(form.imag) > OVERSHOOT_TOL:
        raise InternalConsistencyError(
            f"⟨ψ|σ|ψ⟩ has imaginary residue {form.imag:.3e}"
        )
    return _clamped(form.real, FidelityCase.PURE_MIXED)


def fidelity_mixed_mixed(rho: DensityMatrix, sigma: DensityMatrix) -> FidelityValue:
    """(Tr √(√ρ σ √ρ))², always rooting the first argument.

    Symmetry in the arguments is a mathematical property asserted by tests,
    not enforced by construction.
    """
    _check_dims(rho.dim, sigma.dim)
    root = linalg.sqrt_psd(rho.matrix)
    inner = root @ sigma.matrix @ root
    eigenvalues = linalg.herm_eig((inner + inner.conj().T) / 2).eigenvalues
    if float(eigenvalues[0]) < -linalg.PSD_TOL:
        raise InternalConsistencyError(
            f"√ρσ√ρ eigenvalue {eigenvalues[0]:.3e} below -{linalg.PSD_TOL:g}"
        )
    eigenvalues = np.where(eigenvalues < EIGENVALUE_DUST, 0.0, eigenvalues)
    value = float(np.sum(np.sqrt(eigenvalues)) ** 2)
    return _clamped(value, FidelityCase.MIXED_MIXED)


def fidelity(a: Ket | DensityMatrix, b: Ket | DensityMatrix) -> FidelityValue:
    """Uhlmann-Jozsa fidelity, dispatched to the cheapest applicable case."""
    if isinstance(a, Ket) and isinstance(b, Ket):
        return fidelity_pure_pure(a, b)
    if isinstance(a, Ket) and isinstance(b, DensityMatrix):
        return fidelity_pure_mixed(a, b)
    if isinstance(a, DensityMatrix) and isinstance(b, Ket):
        return fidelity_pure_mixed(b, a)
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return fidelity_mixed_mixed(a, b)
    raise TypeError(
        "expected Ket or DensityMatrix arguments, got "
        f"{type(a).__name__} and {type(b).__name__}"
    )


def purity(rho: DensityMatrix) -> float:
    """Tr(ρ²); 1 for pure states, 1/d for the maximally mixed state."""
    # For Hermitian ρ, Tr(ρ²) = Tr(ρ†ρ) = ‖ρ‖_F².
    return float(np.vdot(rho.matrix, rho.matrix).real)
