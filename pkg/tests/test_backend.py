import os
import subprocess
import sys
from pathlib import Path

import pytest

from ftqcopt import sim

ROOT = Path(__file__).resolve().parents[1]


def test_pure_python_flag_selects_fallback():
    env = dict(os.environ, FTQCOPT_PURE_PYTHON="1")
    code = "from ftqcopt import sim; print(sim.BACKEND, sim.available_backends())"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python ['python']"


def test_set_backend_validates():
    with pytest.raises(ValueError):
        sim.set_backend("gpu")
    if "compiled" not in sim.available_backends():
        with pytest.raises(RuntimeError):
            sim.set_backend("compiled")


def test_benchmark_script_runs():
    sys.path.insert(0, str(ROOT / "benchmarks"))
    try:
        import bench_kernels
    finally:
        sys.path.pop(0)
    previous = sim.BACKEND
    rows = bench_kernels.run([3], 1)
    assert sim.BACKEND == previous
    assert len(rows) == 2
    for row in rows:
        for b in sim.available_backends():
            assert row[b] > 0
