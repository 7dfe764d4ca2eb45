"""Compare the compiled and numpy statevector kernels.

    python3 benchmarks/bench_kernels.py --qubits 6 8 10 --repeats 3
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from ftqcopt import sim
from ftqcopt.bench import gen_qft, gen_random


def _best_time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(qubits: list[int], repeats: int) -> list[dict]:
    backends = sim.available_backends()
    previous = sim.BACKEND
    rows = []
    try:
        for n in qubits:
            for circuit in (gen_qft(n), gen_random(n, 20, seed=n)):
                row = {"circuit": circuit.name, "gates": len(circuit.gates)}
                results = {}
                for b in backends:
                    sim.set_backend(b)
                    results[b] = sim.unitary(circuit)
                    row[b] = _best_time(lambda: sim.unitary(circuit), repeats)
                if len(results) == 2:
                    assert np.allclose(results["compiled"], results["python"], atol=1e-10)
                    row["speedup"] = row["python"] / row["compiled"]
                rows.append(row)
    finally:
        sim.set_backend(previous)
    return rows


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qubits", type=int, nargs="+", default=[4, 6, 8, 10])
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)
    rows = run(args.qubits, args.repeats)
    backends = sim.available_backends()
    print("| circuit | gates | " + " | ".join(f"{b} (ms)" for b in backends) + (" | speedup |" if len(backends) == 2 else " |"))
    print("|---|---:|" + "---:|" * (len(backends) + (len(backends) == 2)))
    for r in rows:
        cells = [r["circuit"], str(r["gates"])] + [f"{r[b] * 1e3:.2f}" for b in backends]
        if "speedup" in r:
            cells.append(f"{r['speedup']:.1f}x")
        print("| " + " | ".join(cells) + " |")


if __name__ == "__main__":
    main()
