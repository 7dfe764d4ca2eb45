"""Translation into the target gate set and single-qubit resynthesis."""
from __future__ import annotations

import cmath
import itertools
import math
from functools import lru_cache

import numpy as np

from .angles import Angle, AngleClass, add_angles, classify_angle
from .circuit import Circuit, Gate, GateKind, TARGET_WITH_DIRECTIVES, cnot, rx, rz, simple
from .sim import equal_up_to_phase, single_qubit_matrix

K = GateKind
UNITARY_TOL = 1e-8
CLIFFORD_GENERATORS = (K.H, K.S, K.SDG, K.X, K.Y, K.Z)
_MAX_WORD = 6


def decompose_ch(control: int, target: int) -> list[Gate]:
    """Controlled-H as S H T . CNOT . RZ(-pi/4) H RZ(-pi/2) on the target.

    The CNOT runs control -> target; the reversed orientation is not equivalent.
    """
    if control == target:
        raise ValueError("CH control and target must differ")
    t = target
    return [
        simple(K.S, t), simple(K.H, t), simple(K.T, t),
        cnot(control, t),
        rz(Angle.exact(-1, 4), t), simple(K.H, t), rz(Angle.exact(-1, 2), t),
    ]


def decompose_ccz(a: int, b: int, c: int) -> list[Gate]:
    if len({a, b, c}) != 3:
        raise ValueError("CCZ operands must be distinct")
    return [
        cnot(b, c), simple(K.TDG, c), cnot(a, c), simple(K.T, c),
        cnot(b, c), simple(K.TDG, c), cnot(a, c), simple(K.T, b), simple(K.T, c),
        cnot(a, b), simple(K.T, a), simple(K.TDG, b), cnot(a, b),
    ]


def decompose_ccx(a: int, b: int, t: int) -> list[Gate]:
    """Seven-T Toffoli network: 6 CNOT, 7 T/TDG, 2 H."""
    if len({a, b, t}) != 3:
        raise ValueError("CCX operands must be distinct")
    core = decompose_ccz(a, b, t)
    return [simple(K.H, t), *core[:9], simple(K.H, t), *core[9:]]


def decompose_u3(theta: Angle, phi: Angle, lam: Angle, q: int) -> list[Gate]:
    """RZ(lam) RX(pi/2) RZ(theta) RX(-pi/2) RZ(phi) in circuit order, identity
    rotations dropped. With theta = 0 the RX pair cancels, leaving RZ(lam + phi)."""
    if classify_angle(theta) is AngleClass.IDENTITY:
        merged = rz(add_angles(lam, phi), q)
        return [] if classify_angle(merged.angle) is AngleClass.IDENTITY else [merged]
    seq = [
        rz(lam, q),
        rx(Angle.exact(1, 2), q),
        rz(theta, q),
        rx(Angle.exact(-1, 2), q),
        rz(phi, q),
    ]
    return [g for g in seq if classify_angle(g.angle) is not AngleClass.IDENTITY]


def _word_matrix(word) -> np.ndarray:
    m = np.eye(2, dtype=complex)
    for kind in word:
        m = single_qubit_matrix(simple(kind, 0)) @ m
    return m


@lru_cache(maxsize=1)
def clifford_table() -> tuple[tuple[np.ndarray, tuple[GateKind, ...]], ...]:
    """The 24 single-qubit Cliffords with their shortest generator word.

    Words are enumerated by length, then lexicographically by gate name, so
    the first word reaching a class is the canonical one. A length that adds no
    new class means the group is closed, so enumeration stops there.
    """
    found: list[tuple[np.ndarray, tuple[GateKind, ...]]] = []
    for length in range(_MAX_WORD + 1):
        before = len(found)
        for word in itertools.product(CLIFFORD_GENERATORS, repeat=length):
            m = _word_matrix(word)
            if not any(equal_up_to_phase(m, known, 1e-9) for known, _ in found):
                found.append((m, word))
        if length > 0 and len(found) == before:
            break
    return tuple(found)


def clifford_word(u: np.ndarray) -> tuple[GateKind, ...] | None:
    for m, word in clifford_table():
        if equal_up_to_phase(m, u, UNITARY_TOL):
            return word
    return None


def _zxz_candidates(u: np.ndarray) -> list[tuple[float, float, float]]:
    """(alpha, beta, gamma) with u ~ RZ(alpha) RX(beta) RZ(gamma)."""
    v = u / cmath.sqrt(np.linalg.det(u))
    beta = 2 * math.atan2(abs(v[1, 0]), abs(v[0, 0]))
    s = -2 * cmath.phase(v[0, 0]) if abs(v[0, 0]) > 1e-12 else 0.0
    d = 2 * cmath.phase(1j * v[1, 0]) if abs(v[1, 0]) > 1e-12 else 0.0
    alpha, gamma = (s + d) / 2, (s - d) / 2
    return [(alpha, beta, gamma), (alpha + math.pi, -beta, gamma + math.pi)]


def _euler_gates(alpha: float, beta: float, gamma: float, q: int) -> list[Gate]:
    b = Angle.from_radians(beta)
    b_cls = classify_angle(b)
    if b_cls is AngleClass.IDENTITY:
        seq = [rz(Angle.from_radians(alpha + gamma), q)]
    elif b.is_exact and b.pi_multiple == 1:
        seq = [rx(b, q), rz(Angle.from_radians(alpha - gamma), q)]
    else:
        seq = [rz(Angle.from_radians(gamma), q), rx(b, q), rz(Angle.from_radians(alpha), q)]
    return [g for g in seq if classify_angle(g.angle) is not AngleClass.IDENTITY]


def resynthesize_1q(u: np.ndarray, q: int = 0) -> list[Gate]:
    """Shortest Clifford word if ``u`` is Clifford, else a ZXZ Euler sequence."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or not np.allclose(u.conj().T @ u, np.eye(2), atol=UNITARY_TOL, rtol=0):
        raise ValueError("resynthesize_1q needs a 2x2 unitary")
    word = clifford_word(u)
    if word is not None:
        return [simple(k, q) for k in word]
    options = [_euler_gates(*cand, q) for cand in _zxz_candidates(u)]
    return min(options, key=len)


def translate_gate(g: Gate) -> list[Gate]:
    k = g.kind
    if k in TARGET_WITH_DIRECTIVES:
        return [g]
    if k is K.CH:
        return decompose_ch(*g.qubits)
    if k is K.CCX:
        return decompose_ccx(*g.qubits)
    if k is K.CCZ:
        return decompose_ccz(*g.qubits)
    if k is K.SWAP:
        a, b = g.qubits
        return [cnot(a, b), cnot(b, a), cnot(a, b)]
    if k is K.U3:
        return decompose_u3(*g.angles, g.qubits[0])
    raise ValueError(f"no translation for gate kind {k!r}")


def translate_to_target(c: Circuit) -> Circuit:
    """Rewrite ``c`` using only target-set gates (plus MEASURE/BARRIER)."""
    out: list[Gate] = []
    for g in c.gates:
        out.extend(translate_gate(g))
    return c.with_gates(out)
