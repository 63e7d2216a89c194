"""Gaussian amplitude perturbation, white noise, and ensemble averaging.

Randomness contract: realization k of a run with seed s draws from numpy's
PCG64 bit generator seeded with ``SeedSequence(entropy=s, spawn_key=(k,))``.
Each realization owns an independent sub-stream, so ensembles are
reproducible regardless of evaluation order, and a fixed
(seed, realization_index) pair always yields bit-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePerturbationError
from .states import DensityMatrix, Ket

#: Identifier recorded in artifact metadata; pinned by golden-value tests.
RNG_ALGORITHM = "numpy-pcg64/seed-sequence(seed, spawn_key=(realization,))"

#: Perturbed vectors with a norm below this are rejected as degenerate.
DEGENERATE_NORM_TOL = 1e-12

#: Extra attempts granted per realization when averaging an ensemble.
RETRY_BUDGET = 3

PERTURBATION_MODES = ("complex", "real")

_SEED_LIMIT = 2 ** 64


@dataclass(frozen=True)
class GaussianNoiseSpec:
    """Parameters of a Gaussian amplitude-perturbation run.

    ``sigma`` is the noise strength (standard deviation of each perturbation
    component), ``mean`` its offset.  In "complex" mode the real and
    imaginary parts of every amplitude receive independent Normal(mean,
    sigma²) draws; "real" mode perturbs the real parts only.
    """

    sigma: float
    mean: float = 0.0
    seed: int = 42
    ensemble_size: int = 500
    mode: str = "complex"

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma < 0:
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma}")
        if not np.isfinite(self.mean):
            raise ValueError(f"mean must be finite, got {self.mean}")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.ensemble_size < 1:
            raise ValueError(f"ensemble_size must be >= 1, got {self.ensemble_size}")
        if self.mode not in PERTURBATION_MODES:
            raise ValueError(f"mode must be one of {PERTURBATION_MODES}, got {self.mode!r}")


def _realization_rng(seed: int, realization_index: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(realization_index,))
    return np.random.Generator(np.random.PCG64(sequence))


def _draw_delta(rng: np.random.Generator, spec: GaussianNoiseSpec, size: int) -> np.ndarray:
    if spec.mode == "real":
        return rng.normal(spec.mean, spec.sigma, size).astype(complex)
    real = rng.normal(spec.mean, spec.sigma, size)
    imag = rng.normal(spec.mean, spec.sigma, size)
    return real + 1j * imag


def _renormalize(perturbed: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(perturbed))
    if norm < DEGENERATE_NORM_TOL:
        raise DegeneratePerturbationError(
            f"perturbed vector norm {norm:.3e} is below {DEGENERATE_NORM_TOL:g}"
        )
    return perturbed / norm


def gaussian_perturb(psi: Ket, spec: GaussianNoiseSpec, realization_index: int = 0) -> Ket:
    """Add an independent Gaussian draw to every amplitude and renormalize.

    The output is a pure state again; purity is preserved per realization.
    Deterministic for a fixed (spec.seed, realization_index) pair.
    """
    if realization_index < 0:
        raise ValueError(f"realization_index must be >= 0, got {realization_index}")
    if spec.sigma == 0.0 and spec.mean == 0.0:
        return psi
    rng = _realization_rng(spec.seed, realization_index)
    delta = _draw_delta(rng, spec, psi.dim)
    return Ket(_renormalize(psi.amplitudes + delta))


def white_noise(rho: DensityMatrix, p: float) -> DensityMatrix:
    """Depolarizing mixture (1-p)·ρ + p·I/d.

    With probability p the state is replaced by the maximally mixed state;
    p=0 leaves ρ untouched and p=1 yields exactly I/d.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing probability must be in [0, 1], got {p}")
    d = rho.dim
    return DensityMatrix((1.0 - p) * rho.matrix + (p / d) * np.eye(d))


def _perturbed_realization(psi: Ket, spec: GaussianNoiseSpec, k: int) -> Ket:
    # Degenerate draws are essentially impossible (norm < 1e-12 requires the
    # noise to cancel the state almost exactly), but each realization gets
    # RETRY_BUDGET fallback sub-streams from an index range disjoint from
    # 0..M-1 so retries stay deterministic.
    try:
        return gaussian_perturb(psi, spec, k)
    except DegeneratePerturbationError:
        for attempt in range(RETRY_BUDGET):
            retry_index = spec.ensemble_size + RETRY_BUDGET * k + attempt
            try:
                return gaussian_perturb(psi, spec, retry_index)
            except DegeneratePerturbationError:
                continue
        raise


def ensemble_average(psi: Ket, spec: GaussianNoiseSpec) -> DensityMatrix:
    """Mean projector ρ̄ = (1/M) Σ_k |ψ'_k⟩⟨ψ'_k| over realizations 0..M-1.

    Accumulation order is fixed by realization index, so the result is
    bit-reproducible for a fixed spec.
    """
    accumulator = np.zeros((psi.dim, psi.dim), dtype=complex)
    for k in range(spec.ensemble_size):
        amps = _perturbed_realization(psi, spec, k).amplitudes
        accumulator += np.outer(amps, amps.conj())
    return DensityMatrix(accumulator / spec.ensemble_size)
