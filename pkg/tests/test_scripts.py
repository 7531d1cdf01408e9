import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def _run(script, *args):
    return subprocess.run(
        [sys.executable, str(SCRIPTS / script), *args],
        capture_output=True, text=True, timeout=120,
    )


def test_df_landscape_runs():
    proc = _run("df_landscape.py", "--rungs", "2", "--pairs", "P2-line")
    assert proc.returncode == 0, proc.stderr
    assert "instability threshold: 1" in proc.stdout
    assert "witness c" in proc.stdout


def test_oracle_sweep_runs():
    proc = _run("oracle_sweep.py", "--convergence-k", "8")
    assert proc.returncode == 0, proc.stderr
    assert "MISMATCH" not in proc.stdout
    assert "J^NA(P2-line, c=1/2) = 5/24" in proc.stdout
