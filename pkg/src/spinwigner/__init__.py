"""GHZ/W states under Gaussian amplitude perturbation and white noise.

Builds multipartite GHZ and W states, degrades them with Gaussian
amplitude perturbations (state-vector level) or white noise (density-matrix
level), and quantifies the damage through basis probabilities,
Uhlmann-Jozsa fidelity, purity, and equal-angle spin Wigner functions.
"""

__version__ = "0.1.0"

from .errors import (
    DegeneratePerturbationError,
    InternalConsistencyError,
    NotHermitianError,
    NotPSDError,
    NumericValidationError,
    ShapeError,
)
from .linalg import HermitianEig, herm_eig, partial_trace, sqrt_psd, tensor, tensor_power
from .metrics import (
    FidelityCase,
    FidelityValue,
    fidelity,
    fidelity_mixed_mixed,
    fidelity_pure_mixed,
    fidelity_pure_pure,
    purity,
)
from .noise import (
    RNG_ALGORITHM,
    GaussianNoiseSpec,
    ensemble_average,
    gaussian_perturb,
    white_noise,
)
from .states import (
    DensityMatrix,
    Ket,
    ProbabilityDistribution,
    basis_labels,
    ghz_state,
    ket_to_dm,
    probabilities,
    w_state,
)
from .wigner import (
    KERNEL_EIGENVALUES,
    KernelOperator,
    WignerGrid,
    kernel,
    wigner_ea,
    wigner_grid,
    wigner_grid_ensemble,
)

__all__ = [
    "__version__",
    "DegeneratePerturbationError",
    "InternalConsistencyError",
    "NotHermitianError",
    "NotPSDError",
    "NumericValidationError",
    "ShapeError",
    "HermitianEig",
    "herm_eig",
    "partial_trace",
    "sqrt_psd",
    "tensor",
    "tensor_power",
    "FidelityCase",
    "FidelityValue",
    "fidelity",
    "fidelity_mixed_mixed",
    "fidelity_pure_mixed",
    "fidelity_pure_pure",
    "purity",
    "RNG_ALGORITHM",
    "GaussianNoiseSpec",
    "ensemble_average",
    "gaussian_perturb",
    "white_noise",
    "DensityMatrix",
    "Ket",
    "ProbabilityDistribution",
    "basis_labels",
    "ghz_state",
    "ket_to_dm",
    "probabilities",
    "w_state",
    "KERNEL_EIGENVALUES",
    "KernelOperator",
    "WignerGrid",
    "kernel",
    "wigner_ea",
    "wigner_grid",
    "wigner_grid_ensemble",
]
