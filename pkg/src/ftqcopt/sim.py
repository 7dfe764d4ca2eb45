"""Small dense statevector simulator used as the equivalence oracle.

The inner kernel comes from the compiled ``_kernels`` extension when it is
built, else from the numpy fallback. Set ``FTQCOPT_PURE_PYTHON=1`` to force
the fallback.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

import numpy as np

from . import _kernels_py
from .circuit import Circuit, Gate, GateKind

try:
    if os.environ.get("FTQCOPT_PURE_PYTHON"):
        raise ImportError("pure-python backend requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_kernel = (_compiled or _kernels_py).apply_controlled_1q

MAX_SIM_QUBITS = 14
MAX_EQUIV_QUBITS = 10


def available_backends() -> list[str]:
    return ["compiled", "python"] if _compiled is not None else ["python"]


def set_backend(name: str) -> None:
    global BACKEND, _kernel
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _kernel = _compiled.apply_controlled_1q
    elif name == "python":
        _kernel = _kernels_py.apply_controlled_1q
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


class SimulationError(ValueError):
    pass


_SQ2 = 1 / math.sqrt(2)
_FIXED = {
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.H: np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, cmath.exp(1j * math.pi / 4)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, cmath.exp(-1j * math.pi / 4)]], dtype=complex),
    GateKind.SX: 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex),
}


def rz_matrix(theta: float) -> np.ndarray:
    return np.array([[cmath.exp(-0.5j * theta), 0], [0, cmath.exp(0.5j * theta)]], dtype=complex)


def rx_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -cmath.exp(1j * lam) * s], [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c]],
        dtype=complex,
    )


def single_qubit_matrix(g: Gate) -> np.ndarray:
    """2x2 unitary of a single-qubit gate."""
    if g.kind in _FIXED:
        return _FIXED[g.kind]
    if g.kind is GateKind.RZ:
        return rz_matrix(g.angle.radians)
    if g.kind is GateKind.RX:
        return rx_matrix(g.angle.radians)
    if g.kind is GateKind.RY:
        return ry_matrix(g.angle.radians)
    if g.kind is GateKind.U3:
        return u3_matrix(*(a.radians for a in g.angles))
    raise ValueError(f"{g.kind.name} is not a single-qubit unitary")


def _apply(state: np.ndarray, n: int, g: Gate) -> None:
    k = g.kind
    q = g.qubits
    if k is GateKind.BARRIER:
        return
    if k is GateKind.MEASURE:
        raise SimulationError("cannot simulate MEASURE")
    if k is GateKind.CNOT:
        _kernel(state, n, (q[0],), q[1], _FIXED[GateKind.X])
    elif k is GateKind.CH:
        _kernel(state, n, (q[0],), q[1], _FIXED[GateKind.H])
    elif k is GateKind.CCX:
        _kernel(state, n, (q[0], q[1]), q[2], _FIXED[GateKind.X])
    elif k is GateKind.CCZ:
        _kernel(state, n, (q[0], q[1]), q[2], _FIXED[GateKind.Z])
    elif k is GateKind.SWAP:
        x = _FIXED[GateKind.X]
        _kernel(state, n, (q[0],), q[1], x)
        _kernel(state, n, (q[1],), q[0], x)
        _kernel(state, n, (q[0],), q[1], x)
    else:
        _kernel(state, n, (), q[0], single_qubit_matrix(g))


def _check(c: Circuit, cap: int) -> None:
    if c.num_qubits > cap:
        raise SimulationError(f"{c.num_qubits} qubits exceeds the simulation cap of {cap}")
    if any(g.kind is GateKind.MEASURE for g in c.gates):
        raise SimulationError("cannot simulate a circuit containing MEASURE")


@dataclass(frozen=True)
class Statevector:
    amplitudes: np.ndarray

    @property
    def num_qubits(self) -> int:
        return int(self.amplitudes.shape[0]).bit_length() - 1

    @classmethod
    def basis(cls, n: int, index: int = 0) -> Statevector:
        amps = np.zeros(1 << n, dtype=complex)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def from_bitstring(cls, bits: str) -> Statevector:
        return cls.basis(len(bits), int(bits, 2))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def simulate(c: Circuit, initial: Statevector | None = None) -> Statevector:
    _check(c, MAX_SIM_QUBITS)
    if initial is None:
        initial = Statevector.basis(c.num_qubits)
    if initial.amplitudes.shape != (1 << c.num_qubits,):
        raise SimulationError("initial state does not match the circuit width")
    state = np.array(initial.amplitudes, dtype=complex).reshape(-1, 1).copy()
    for g in c.gates:
        _apply(state, c.num_qubits, g)
    return Statevector(state[:, 0])


def unitary(c: Circuit) -> np.ndarray:
    """Matrix of ``c``; column j is the output for basis input j."""
    _check(c, MAX_SIM_QUBITS)
    state = np.eye(1 << c.num_qubits, dtype=complex)
    for g in c.gates:
        _apply(state, c.num_qubits, g)
    return state


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """True when ``b == e^{i phi} a`` within ``tol`` in max-norm, phase fixed on
    the largest-magnitude entry of ``a``."""
    if a.shape != b.shape:
        return False
    k = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    if abs(a[k]) < tol:
        return bool(np.max(np.abs(b)) <= tol)
    if abs(b[k]) < 1e-300:
        return False
    phase = b[k] / a[k]
    phase /= abs(phase)
    return bool(np.max(np.abs(a * phase - b)) <= tol)


def equivalent_up_to_global_phase(a: Circuit, b: Circuit, tol: float = 1e-8) -> bool:
    if a.num_qubits != b.num_qubits:
        raise ValueError(f"qubit-count mismatch: {a.num_qubits} vs {b.num_qubits}")
    _check(a, MAX_EQUIV_QUBITS)
    _check(b, MAX_EQUIV_QUBITS)
    return equal_up_to_phase(unitary(a), unitary(b), tol)
