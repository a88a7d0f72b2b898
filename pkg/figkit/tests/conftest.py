import subprocess
import sys

import pytest


def run_cli(*args):
    """Invoke the numerical CLI as an external process (never import it)."""
    proc = subprocess.run(
        [sys.executable, "-m", "specmoll.cli", *args],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def reconstruction_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("csv") / "reconstruct-f1.csv"
    run_cli("reconstruct", "--signal", "f1", "--n", "32",
            "--grid-points", "80", "--out", str(out))
    return out


@pytest.fixture(scope="session")
def study_dir(tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("study")
    run_cli("study", "--signal", "f1", "--ns", "16,32,64",
            "--grid-points", "60", "--out-dir", str(out_dir))
    return out_dir
