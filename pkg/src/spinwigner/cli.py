"""Command-line interface tying states, noise, metrics, and Wigner grids
into reproducible experiments.

Each command writes CSV data plus a JSON metadata sidecar with the same
basename, so every figure downstream is regenerable from the artifacts
alone.  Exit codes: 0 success, 2 argument error, 3 numeric validation
error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .artifacts import CSV_DIALECT, write_csv, write_sidecar
from .errors import NumericValidationError
from .metrics import fidelity_pure_mixed, fidelity_pure_pure, purity
from .noise import (
    PERTURBATION_MODES,
    RNG_ALGORITHM,
    GaussianNoiseSpec,
    ensemble_average,
    gaussian_perturb,
    white_noise,
)
from .states import Ket, ghz_state, ket_to_dm, probabilities, w_state
from .wigner import (
    DEFAULT_PHI_STEPS,
    DEFAULT_THETA_STEPS,
    WignerGrid,
    wigner_grid,
    wigner_grid_ensemble,
)

EXIT_OK = 0
EXIT_ARGUMENT = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

STATE_BUILDERS = {"ghz": ghz_state, "w": w_state}
NOISE_KINDS = ("gaussian", "white", "none")

CONVENTIONS = {
    "qubit_order": "qubit 0 is the leftmost ket label; basis index is big-endian",
    "grid": "theta-major; theta_i = i*pi/(theta_steps-1) in [0, pi], "
            "phi_j = j*2*pi/(phi_steps-1) in [0, 2*pi], endpoints included",
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved parameters of one CLI invocation."""

    command: str
    state_kind: str
    n_qubits: int
    noise_kind: str
    strength_start: float
    strength_stop: float
    steps: int
    seed: int
    ensemble_size: int
    realization_index: int
    theta_steps: int
    phi_steps: int
    perturbation_mode: str
    output_path: Path

    def __post_init__(self):
        if self.state_kind not in STATE_BUILDERS:
            raise ValueError(f"unknown state kind {self.state_kind!r}")
        if self.noise_kind not in NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.noise_kind!r}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if not np.isfinite(self.strength_start) or not np.isfinite(self.strength_stop):
            raise ValueError("noise strengths must be finite")
        if self.strength_start > self.strength_stop:
            raise ValueError(
                f"strength range start {self.strength_start} exceeds stop {self.strength_stop}"
            )
        if self.steps == 1 and self.strength_start != self.strength_stop:
            raise ValueError("a single-step sweep needs start == stop")
        if self.noise_kind == "white" and not (
            0.0 <= self.strength_start and self.strength_stop <= 1.0
        ):
            raise ValueError("white-noise strengths must lie in [0, 1]")
        if self.noise_kind == "gaussian" and self.strength_start < 0.0:
            raise ValueError("gaussian noise strength must be >= 0")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.ensemble_size < 1:
            raise ValueError(f"ensemble size must be >= 1, got {self.ensemble_size}")
        if self.realization_index < 0:
            raise ValueError(f"realization index must be >= 0, got {self.realization_index}")
        if self.perturbation_mode not in PERTURBATION_MODES:
            raise ValueError(f"unknown perturbation mode {self.perturbation_mode!r}")

    def strength_values(self) -> np.ndarray:
        return np.linspace(self.strength_start, self.strength_stop, self.steps)

    def gaussian_spec(self, sigma: float | None = None) -> GaussianNoiseSpec:
        return GaussianNoiseSpec(
            sigma=self.strength_start if sigma is None else sigma,
            mean=0.0,
            seed=self.seed,
            ensemble_size=self.ensemble_size,
            mode=self.perturbation_mode,
        )

    def metadata(self, variant: str, columns: tuple[str, ...], **extra) -> dict:
        meta = {
            "artifact": self.command,
            "variant": variant,
            "columns": list(columns),
            "config": {
                "state": self.state_kind,
                "n_qubits": self.n_qubits,
                "noise": self.noise_kind,
                "strength_start": self.strength_start,
                "strength_stop": self.strength_stop,
                "steps": self.steps,
                "seed": self.seed,
                "ensemble_size": self.ensemble_size,
                "realization_index": self.realization_index,
                "theta_steps": self.theta_steps,
                "phi_steps": self.phi_steps,
                "perturbation_mode": self.perturbation_mode,
            },
            "conventions": CONVENTIONS,
            "csv_dialect": CSV_DIALECT,
            "rng_algorithm": RNG_ALGORITHM,
            "library_version": __version__,
        }
        meta.update(extra)
        return meta


def _build_state(config: RunConfig) -> Ket:
    return STATE_BUILDERS[config.state_kind](config.n_qubits)


def _variant_path(path: Path, tag: str) -> Path:
    return path.with_name(f"{path.stem}_{tag}{path.suffix}")


def _emit(path: Path, header: tuple[str, ...], rows, metadata: dict) -> list[Path]:
    write_csv(path, header, rows)
    sidecar = write_sidecar(path, metadata)
    return [path, sidecar]


def _emit_probs(config: RunConfig, path: Path, dist, variant: str) -> list[Path]:
    header = ("basis_label", "probability")
    rows = [(label, float(p)) for label, p in zip(dist.labels, dist.probabilities)]
    return _emit(path, header, rows, config.metadata(variant, header))


def cmd_probs(config: RunConfig) -> list[Path]:
    """Basis probabilities of the ideal or noise-applied state."""
    psi = _build_state(config)
    if config.noise_kind == "none":
        return _emit_probs(config, config.output_path,
                           probabilities(ket_to_dm(psi)), "ideal")
    if config.noise_kind == "white":
        rho = white_noise(ket_to_dm(psi), config.strength_start)
        return _emit_probs(config, config.output_path, probabilities(rho), "white")
    spec = config.gaussian_spec()
    single = probabilities(
        ket_to_dm(gaussian_perturb(psi, spec, config.realization_index))
    )
    averaged = probabilities(ensemble_average(psi, spec))
    written = _emit_probs(config, _variant_path(config.output_path, "single"),
                          single, "gaussian_single")
    written += _emit_probs(config, _variant_path(config.output_path, "ensemble"),
                           averaged, "gaussian_ensemble")
    return written


def cmd_fidelity_sweep(config: RunConfig) -> list[Path]:
    """Fidelity and purity versus noise strength, endpoints included."""
    psi = _build_state(config)
    strengths = config.strength_values()
    if config.noise_kind == "white":
        rho0 = ket_to_dm(psi)
        header = ("strength", "fidelity", "purity")
        rows = []
        for p in strengths:
            rho_p = white_noise(rho0, float(p))
            rows.append((float(p), fidelity_pure_mixed(psi, rho_p).value, purity(rho_p)))
        variant = "white"
    elif config.noise_kind == "gaussian":
        header = ("strength", "fidelity", "purity", "fidelity_single")
        rows = []
        for sigma in strengths:
            spec = config.gaussian_spec(sigma=float(sigma))
            averaged = ensemble_average(psi, spec)
            single = gaussian_perturb(psi, spec, config.realization_index)
            rows.append((
                float(sigma),
                fidelity_pure_mixed(psi, averaged).value,
                purity(averaged),
                fidelity_pure_pure(psi, single).value,
            ))
        variant = "gaussian"
    else:
        raise ValueError("fidelity-sweep requires --noise gaussian or white")
    return _emit(config.output_path, header, rows, config.metadata(variant, header))


def _emit_wigner(config: RunConfig, path: Path, grid: WignerGrid, variant: str) -> list[Path]:
    header = ("theta", "phi", "w_value")
    rows = [
        (float(theta), float(phi), float(grid.values[i, j]))
        for i, theta in enumerate(grid.theta_values)
        for j, phi in enumerate(grid.phi_values)
    ]
    metadata = config.metadata(
        variant,
        header,
        state_descriptor=grid.state_descriptor,
        noise_descriptor=grid.noise_descriptor,
    )
    return _emit(path, header, rows, metadata)


def cmd_wigner(config: RunConfig) -> list[Path]:
    """Equal-angle Wigner grid of the ideal or noise-applied state."""
    psi = _build_state(config)
    n = config.n_qubits
    state_desc = f"{config.state_kind}({n})"
    grid_args = (config.theta_steps, config.phi_steps)
    if config.noise_kind == "none":
        grid = wigner_grid(ket_to_dm(psi), n, *grid_args,
                           state_descriptor=state_desc, noise_descriptor="ideal")
        return _emit_wigner(config, config.output_path, grid, "ideal")
    if config.noise_kind == "white":
        p = config.strength_start
        grid = wigner_grid(white_noise(ket_to_dm(psi), p), n, *grid_args,
                           state_descriptor=state_desc,
                           noise_descriptor=f"white(p={p})")
        return _emit_wigner(config, config.output_path, grid, "white")
    spec = config.gaussian_spec()
    single_state = ket_to_dm(gaussian_perturb(psi, spec, config.realization_index))
    single_grid = wigner_grid(
        single_state, n, *grid_args,
        state_descriptor=state_desc,
        noise_descriptor=(
            f"gaussian(sigma={spec.sigma}, realization={config.realization_index})"
        ),
    )
    ensemble_grid = wigner_grid_ensemble(
        psi, spec, *grid_args,
        state_descriptor=state_desc,
        noise_descriptor=f"gaussian(sigma={spec.sigma}, ensemble={spec.ensemble_size})",
    )
    written = _emit_wigner(config, _variant_path(config.output_path, "single"),
                           single_grid, "gaussian_single")
    written += _emit_wigner(config, _variant_path(config.output_path, "ensemble"),
                            ensemble_grid, "gaussian_ensemble")
    return written


COMMANDS = {
    "probs": cmd_probs,
    "fidelity-sweep": cmd_fidelity_sweep,
    "wigner": cmd_wigner,
}


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--state", required=True, choices=sorted(STATE_BUILDERS),
                        help="which entangled state family to build")
    parser.add_argument("--n", type=int, default=3, dest="n_qubits",
                        help="number of qubits (default 3)")
    parser.add_argument("--noise", choices=NOISE_KINDS, default="none",
                        help="noise model to apply (default none)")
    parser.add_argument("--seed", type=int, default=42,
                        help="RNG seed for gaussian noise (default 42)")
    parser.add_argument("--ensemble", type=int, default=500, dest="ensemble_size",
                        help="gaussian ensemble size M (default 500)")
    parser.add_argument("--realization", type=int, default=0, dest="realization_index",
                        help="which single gaussian realization to report (default 0)")
    parser.add_argument("--perturbation-mode", choices=PERTURBATION_MODES,
                        default="complex", dest="perturbation_mode",
                        help="perturb real+imaginary parts or real parts only")
    parser.add_argument("--out", required=True, type=Path, dest="output_path",
                        help="output CSV path (JSON sidecar written alongside)")


def _add_single_strength_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sigma", type=float, default=None,
                        help="gaussian noise strength (standard deviation)")
    parser.add_argument("--p", type=float, default=None,
                        help="white-noise mixing probability in [0, 1]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinwigner",
        description="GHZ/W states under gaussian amplitude perturbation and "
                    "white noise: probabilities, fidelity sweeps, and "
                    "equal-angle spin Wigner grids, exported as CSV + JSON.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    probs = sub.add_parser("probs", help="basis probability distribution")
    _add_common_options(probs)
    _add_single_strength_options(probs)

    sweep = sub.add_parser("fidelity-sweep", help="fidelity/purity vs noise strength")
    _add_common_options(sweep)
    sweep.add_argument("--start", type=float, default=0.0,
                       help="first noise strength (default 0)")
    sweep.add_argument("--stop", type=float, default=1.0,
                       help="last noise strength (default 1)")
    sweep.add_argument("--steps", type=int, default=50,
                       help="number of sweep points (default 50)")

    wig = sub.add_parser("wigner", help="equal-angle Wigner grid")
    _add_common_options(wig)
    _add_single_strength_options(wig)
    wig.add_argument("--theta-steps", type=int, default=DEFAULT_THETA_STEPS,
                     dest="theta_steps", help="polar grid points (default 181)")
    wig.add_argument("--phi-steps", type=int, default=DEFAULT_PHI_STEPS,
                     dest="phi_steps", help="azimuthal grid points (default 361)")

    return parser


def _single_strength(args: argparse.Namespace) -> float:
    if args.noise == "gaussian":
        if args.sigma is None:
            raise ValueError("gaussian noise requires --sigma")
        if args.p is not None:
            raise ValueError("--p does not apply to gaussian noise")
        return args.sigma
    if args.noise == "white":
        if args.p is None:
            raise ValueError("white noise requires --p")
        if args.sigma is not None:
            raise ValueError("--sigma does not apply to white noise")
        return args.p
    if args.sigma is not None or args.p is not None:
        raise ValueError("--sigma/--p require a matching --noise")
    return 0.0


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "fidelity-sweep":
        start, stop, steps = args.start, args.stop, args.steps
    else:
        start = stop = _single_strength(args)
        steps = 1
    return RunConfig(
        command=args.command,
        state_kind=args.state,
        n_qubits=args.n_qubits,
        noise_kind=args.noise,
        strength_start=start,
        strength_stop=stop,
        steps=steps,
        seed=args.seed,
        ensemble_size=args.ensemble_size,
        realization_index=args.realization_index,
        theta_steps=getattr(args, "theta_steps", DEFAULT_THETA_STEPS),
        phi_steps=getattr(args, "phi_steps", DEFAULT_PHI_STEPS),
        perturbation_mode=args.perturbation_mode,
        output_path=args.output_path,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        written = COMMANDS[config.command](config)
    except NumericValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
