"""Fixtures: real artifacts produced through the simulation CLI."""

import subprocess
import sys
from pathlib import Path

import pytest

PLOTS_DIR = Path(__file__).resolve().parents[1]
if str(PLOTS_DIR) not in sys.path:
    sys.path.insert(0, str(PLOTS_DIR))


def run_simulation_cli(*args):
    result = subprocess.run(
        [sys.executable, "-m", "spinwigner.cli", *(str(a) for a in args)],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr
    return result


@pytest.fixture(scope="session")
def artifact_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("artifacts")
    run_simulation_cli("wigner", "--state", "ghz", "--out", root / "ghz_wigner.csv")
    run_simulation_cli("wigner", "--state", "w", "--noise", "white", "--p", "1.0",
                       "--out", root / "flat_wigner.csv")
    run_simulation_cli("probs", "--state", "ghz", "--out", root / "ghz_probs.csv")
    run_simulation_cli("fidelity-sweep", "--state", "ghz", "--noise", "white",
                       "--steps", "25", "--out", root / "ghz_sweep.csv")
    run_simulation_cli("fidelity-sweep", "--state", "w", "--noise", "gaussian",
                       "--start", "0", "--stop", "1", "--steps", "5",
                       "--ensemble", "40", "--out", root / "w_sweep.csv")
    return root
