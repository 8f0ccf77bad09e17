import subprocess
import sys
from pathlib import Path

import pytest

DEMOS = sorted(p for p in (Path(__file__).resolve().parents[1] / "demos").glob("*.py") if not p.name.startswith("_"))


@pytest.mark.parametrize("script", DEMOS, ids=lambda p: p.stem)
def test_demo_runs(script, tmp_path):
    res = subprocess.run([sys.executable, str(script), "--out", str(tmp_path)], capture_output=True, text=True,
                         cwd=script.parent, timeout=300)
    assert res.returncode == 0, res.stderr
    if "wrote" in res.stdout:
        assert any(tmp_path.glob("*.svg"))
