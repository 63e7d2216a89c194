#!/usr/bin/env python3
"""Render figures from spinwigner CSV artifacts.

Reads the CSV + JSON sidecar files produced by the simulation CLI and draws
the matching figure: probability bar charts, fidelity curves, and 2-D
contour maps or 3-D surfaces of equal-angle Wigner grids.  No physics is
recomputed here; a figure is a pure function of its artifact files, and
image metadata that would vary between runs (timestamps, tool versions) is
stripped so re-renders are byte-identical.

Usage:
    python render.py --kind bars    --in probs.csv  --out probs.png
    python render.py --kind curves  --in sweep.csv [--in2 other_sweep.csv] --out sweep.png
    python render.py --kind contour --in wigner.csv --out wigner.png
    python render.py --kind surface --in wigner.csv --out wigner_3d.png
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib import cm
from matplotlib.colors import CenteredNorm

EXIT_OK = 0
EXIT_ARGUMENT = 2
EXIT_PARSE = 3
EXIT_IO = 4

FIGURE_KINDS = ("bars", "curves", "contour", "surface")

#: Diverging palette: red for positive Wigner values, blue for negative,
#: with the midpoint anchored at zero regardless of the data range.
WIGNER_CMAP = "RdBu_r"

#: Exact lattice agreement required when reconstructing a Wigner grid.
GRID_TOL = 1e-12


class ArtifactParseError(Exception):
    """Artifact file content does not match the expected schema."""


@dataclass(frozen=True)
class FigureSpec:
    """One render request: artifact path(s), figure kind, output image."""

    kind: str
    input_path: Path
    output_path: Path
    input2_path: Path | None = None
    dpi: int = 150
    title: str | None = None


@dataclass(frozen=True)
class Artifact:
    """Parsed CSV artifact plus its JSON sidecar (if present)."""

    path: Path
    header: list[str]
    columns: dict[str, list]
    metadata: dict

    def numeric(self, name: str) -> np.ndarray:
        return np.asarray(self.columns[name], dtype=float)


def load_artifact(path: Path) -> Artifact:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").split("\n")
    rows = [line for line in lines if line]
    if not rows:
        raise ArtifactParseError(f"{path}: empty artifact")
    header = rows[0].split(",")
    columns: dict[str, list] = {name: [] for name in header}
    label_columns = {name for name in header if name == "basis_label"}
    for row_number, line in enumerate(rows[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise ArtifactParseError(
                f"{path}: row {row_number} has {len(cells)} cells, "
                f"expected {len(header)}"
            )
        for name, cell in zip(header, cells):
            if name in label_columns:
                columns[name].append(cell)
                continue
            try:
                columns[name].append(float(cell))
            except ValueError as exc:
                raise ArtifactParseError(
                    f"{path}: row {row_number}, column {name!r}: "
                    f"{cell!r} is not a number"
                ) from exc
    sidecar = path.with_suffix(".json")
    metadata = {}
    if sidecar.exists():
        try:
            metadata = json.loads(sidecar.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ArtifactParseError(f"{sidecar}: invalid JSON sidecar: {exc}") from exc
    return Artifact(path=path, header=header, columns=columns, metadata=metadata)


def require_columns(artifact: Artifact, expected: tuple[str, ...], kind: str) -> None:
    if artifact.header != list(expected):
        raise ArtifactParseError(
            f"{artifact.path}: figure kind {kind!r} needs columns "
            f"{list(expected)}, found {artifact.header}"
        )


@dataclass(frozen=True)
class WignerGridData:
    """Wigner values reassembled on their θ×φ lattice."""

    thetas: np.ndarray
    phis: np.ndarray
    values: np.ndarray


def to_wigner_grid(artifact: Artifact) -> WignerGridData:
    """Reassemble the theta-major (theta, phi, w_value) rows into a lattice."""
    require_columns(artifact, ("theta", "phi", "w_value"), "contour/surface")
    thetas = artifact.numeric("theta")
    phis = artifact.numeric("phi")
    values = artifact.numeric("w_value")
    unique_thetas = np.unique(thetas)
    unique_phis = np.unique(phis)
    expected_rows = unique_thetas.size * unique_phis.size
    if values.size != expected_rows:
        raise ArtifactParseError(
            f"{artifact.path}: {values.size} rows cannot fill a "
            f"{unique_thetas.size} x {unique_phis.size} grid"
        )
    lattice_theta = np.repeat(unique_thetas, unique_phis.size)
    lattice_phi = np.tile(unique_phis, unique_thetas.size)
    mismatch = np.nonzero(
        (np.abs(thetas - lattice_theta) > GRID_TOL)
        | (np.abs(phis - lattice_phi) > GRID_TOL)
    )[0]
    if mismatch.size:
        row_number = int(mismatch[0]) + 2  # header occupies row 1
        raise ArtifactParseError(
            f"{artifact.path}: row {row_number} breaks theta-major grid order"
        )
    grid = values.reshape(unique_thetas.size, unique_phis.size)
    return WignerGridData(thetas=unique_thetas, phis=unique_phis, values=grid)


def _descriptor_title(artifact: Artifact, fallback: str) -> str:
    meta = artifact.metadata
    state = meta.get("state_descriptor")
    noise = meta.get("noise_descriptor")
    if state or noise:
        return " / ".join(part for part in (state, noise) if part)
    config = meta.get("config", {})
    if config:
        return f"{config.get('state', '?')}({config.get('n_qubits', '?')}) " \
               f"noise={config.get('noise', '?')}"
    return fallback


def _wigner_norm(values: np.ndarray) -> CenteredNorm:
    # Midpoint pinned at zero so positive (red) and negative (blue) regions
    # stay visually distinct whatever the data range.
    return CenteredNorm(vcenter=0.0, halfrange=max(float(np.abs(values).max()), 1e-12))


def render_bars(spec: FigureSpec) -> plt.Figure:
    artifact = load_artifact(spec.input_path)
    require_columns(artifact, ("basis_label", "probability"), "bars")
    labels = artifact.columns["basis_label"]
    probs = artifact.numeric("probability")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar(range(len(labels)), probs, color="#3465a4", edgecolor="black", linewidth=0.4)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels([f"|{label}⟩" for label in labels],
                       rotation=90 if len(labels) > 16 else 0)
    ax.set_xlabel("basis state")
    ax.set_ylabel("probability")
    ax.set_ylim(0, max(1.0, float(probs.max()) * 1.05))
    ax.set_title(spec.title or _descriptor_title(artifact, spec.input_path.stem))
    fig.tight_layout()
    return fig


def render_curves(spec: FigureSpec) -> plt.Figure:
    artifacts = [load_artifact(spec.input_path)]
    if spec.input2_path is not None:
        artifacts.append(load_artifact(spec.input2_path))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    palette = ("tab:red", "tab:blue")
    for artifact, color in zip(artifacts, palette):
        if "strength" not in artifact.header or "fidelity" not in artifact.header:
            raise ArtifactParseError(
                f"{artifact.path}: figure kind 'curves' needs 'strength' and "
                f"'fidelity' columns, found {artifact.header}"
            )
        strengths = artifact.numeric("strength")
        label = _descriptor_title(artifact, artifact.path.stem)
        ax.plot(strengths, artifact.numeric("fidelity"), color=color,
                marker=".", markersize=4, label=label)
        if "fidelity_single" in artifact.header:
            ax.plot(strengths, artifact.numeric("fidelity_single"), color=color,
                    linestyle="--", linewidth=1.0,
                    label=f"{label} (single realization)")
    ax.set_xlabel("noise strength")
    ax.set_ylabel("fidelity")
    ax.set_ylim(0, 1.02)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    ax.set_title(spec.title or "fidelity vs noise strength")
    fig.tight_layout()
    return fig


def render_contour(spec: FigureSpec) -> plt.Figure:
    artifact = load_artifact(spec.input_path)
    grid = to_wigner_grid(artifact)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    mesh = ax.pcolormesh(grid.phis, grid.thetas, grid.values,
                         cmap=WIGNER_CMAP, norm=_wigner_norm(grid.values),
                         shading="nearest", rasterized=True)
    ax.set_xlabel(r"$\phi$")
    ax.set_ylabel(r"$\theta$")
    ax.set_xlim(grid.phis[0], grid.phis[-1])
    ax.set_ylim(grid.thetas[0], grid.thetas[-1])
    fig.colorbar(mesh, ax=ax, label="W")
    ax.set_title(spec.title or _descriptor_title(artifact, spec.input_path.stem))
    fig.tight_layout()
    return fig


def render_surface(spec: FigureSpec) -> plt.Figure:
    artifact = load_artifact(spec.input_path)
    grid = to_wigner_grid(artifact)
    theta_mesh, phi_mesh = np.meshgrid(grid.thetas, grid.phis, indexing="ij")
    # Flatten the sphere: (θ, φ) → (θ cos φ, θ sin φ) with W on the z axis.
    x = theta_mesh * np.cos(phi_mesh)
    y = theta_mesh * np.sin(phi_mesh)
    norm = _wigner_norm(grid.values)
    colormap = plt.get_cmap(WIGNER_CMAP)
    fig = plt.figure(figsize=(7, 5.5))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(x, y, grid.values, facecolors=colormap(norm(grid.values)),
                    rstride=1, cstride=1, linewidth=0, antialiased=False,
                    shade=False)
    ax.set_xlabel(r"$\theta\cos\phi$")
    ax.set_ylabel(r"$\theta\sin\phi$")
    ax.set_zlabel("W")
    mappable = cm.ScalarMappable(norm=norm, cmap=WIGNER_CMAP)
    mappable.set_array(grid.values)
    fig.colorbar(mappable, ax=ax, shrink=0.6, label="W")
    ax.set_title(spec.title or _descriptor_title(artifact, spec.input_path.stem))
    return fig


RENDERERS = {
    "bars": render_bars,
    "curves": render_curves,
    "contour": render_contour,
    "surface": render_surface,
}

#: Per-format metadata overrides that strip run-dependent fields.
_METADATA_OVERRIDES = {
    ".png": {"Software": None},
    ".svg": {"Date": None},
    ".pdf": {"CreationDate": None},
}


def render(spec: FigureSpec) -> Path:
    """Render one figure and write it to spec.output_path."""
    if spec.kind not in RENDERERS:
        raise ValueError(f"unknown figure kind {spec.kind!r}")
    fig = RENDERERS[spec.kind](spec)
    out = Path(spec.output_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    metadata = _METADATA_OVERRIDES.get(out.suffix.lower())
    try:
        fig.savefig(out, dpi=spec.dpi, metadata=metadata)
    finally:
        plt.close(fig)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render.py",
        description="Render probability bars, fidelity curves, or Wigner "
                    "contour/surface figures from simulation CSV artifacts.",
    )
    parser.add_argument("--kind", required=True, choices=FIGURE_KINDS)
    parser.add_argument("--in", dest="input_path", required=True, type=Path,
                        help="input CSV artifact (JSON sidecar read if present)")
    parser.add_argument("--in2", dest="input2_path", type=Path, default=None,
                        help="optional second sweep CSV to overlay (curves only)")
    parser.add_argument("--out", dest="output_path", required=True, type=Path,
                        help="output image path (.png/.svg/.pdf)")
    parser.add_argument("--dpi", type=int, default=150)
    parser.add_argument("--title", default=None, help="override the figure title")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.input2_path is not None and args.kind != "curves":
        print("error: --in2 only applies to --kind curves", file=sys.stderr)
        return EXIT_ARGUMENT
    spec = FigureSpec(
        kind=args.kind,
        input_path=args.input_path,
        input2_path=args.input2_path,
        output_path=args.output_path,
        dpi=args.dpi,
        title=args.title,
    )
    try:
        written = render(spec)
    except ArtifactParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(written)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
