"""CSV artifacts with JSON metadata sidecars.

Dialect: comma separator, '.' decimal point, mandatory header row, LF line
endings, floats in shortest round-trip form (Python repr).  Byte-identical
re-runs are part of the contract, so nothing time- or locale-dependent is
ever written.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

CSV_DIALECT = {
    "separator": ",",
    "decimal": ".",
    "float_format": "shortest round-trip (repr)",
    "line_ending": "LF",
    "header_row": True,
}


def format_value(value) -> str:
    """Render a CSV cell; floats use the shortest round-trip representation."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    lines.extend(",".join(format_value(cell) for cell in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_csv(path: Path) -> tuple[list[str], list[list[str]]]:
    """Parse a CSV artifact back into its header and raw string cells."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [line for line in text.split("\n") if line]
    if not lines:
        raise ValueError(f"{path}: empty artifact")
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


def sidecar_path(csv_path: Path) -> Path:
    return Path(csv_path).with_suffix(".json")


def write_sidecar(csv_path: Path, metadata: dict) -> Path:
    """Write the JSON metadata sidecar next to its CSV (same basename)."""
    path = sidecar_path(csv_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(metadata, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
        newline="\n",
    )
    return path


def read_sidecar(csv_path: Path) -> dict:
    return json.loads(sidecar_path(csv_path).read_text(encoding="utf-8"))
