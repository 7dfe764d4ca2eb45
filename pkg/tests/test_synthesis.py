import itertools
import math
import random

import numpy as np
import pytest

from conftest import ch_circuit, ch_native, random_ir_circuit
from ftqcopt.angles import Angle, AngleClass, classify_angle
from ftqcopt.bench import gen_random
from ftqcopt.circuit import TARGET_WITH_DIRECTIVES, Circuit, Gate, GateKind, cnot, rz, simple
from ftqcopt.estimator import count_logical
from ftqcopt.sim import equal_up_to_phase, equivalent_up_to_global_phase, single_qubit_matrix, unitary
from ftqcopt.synthesis import (
    CLIFFORD_GENERATORS,
    clifford_table,
    decompose_ccx,
    decompose_ccz,
    decompose_ch,
    decompose_u3,
    resynthesize_1q,
    translate_to_target,
)

K = GateKind


def _matrix_of(gates, q=0):
    return unitary(Circuit(q + 1, tuple(gates))) if gates else np.eye(2 ** (q + 1))


def _1q_matrix(gates):
    m = np.eye(2, dtype=complex)
    for g in gates:
        m = single_qubit_matrix(g) @ m
    return m


def test_ch_translates_to_the_seven_gate_sequence():
    assert translate_to_target(ch_circuit()) == ch_native()
    assert equivalent_up_to_global_phase(ch_circuit(), ch_native())


def test_ch_cnot_orientation_matters():
    gates = decompose_ch(0, 1)
    flipped = [cnot(1, 0) if g.kind is K.CNOT else g for g in gates]
    assert not equivalent_up_to_global_phase(ch_circuit(), Circuit(2, tuple(flipped)))


def test_ch_rejects_same_qubit():
    with pytest.raises(ValueError):
        decompose_ch(1, 1)


def test_ccx_profile_and_oracle():
    gates = decompose_ccx(0, 1, 2)
    counts = {}
    for g in gates:
        key = "T" if g.kind in (K.T, K.TDG) else g.kind.name
        counts[key] = counts.get(key, 0) + 1
    assert counts == {"CNOT": 6, "T": 7, "H": 2}
    toffoli = np.eye(8)
    toffoli[[6, 7]] = toffoli[[7, 6]]
    assert equal_up_to_phase(toffoli, unitary(Circuit(3, tuple(gates))), 1e-8)


def test_ccz_is_ccx_without_the_h_pair():
    ccx = decompose_ccx(0, 1, 2)
    ccz = decompose_ccz(0, 1, 2)
    assert [g for g in ccx if g.kind is not K.H] == ccz
    assert equal_up_to_phase(np.diag([1] * 7 + [-1]).astype(complex), unitary(Circuit(3, tuple(ccz))), 1e-8)


@pytest.mark.parametrize("fn", [decompose_ccx, decompose_ccz])
def test_three_qubit_decompositions_reject_duplicates(fn):
    with pytest.raises(ValueError):
        fn(0, 0, 2)


def test_fixed_decompositions_on_all_operand_orders():
    for a, b, c in itertools.permutations(range(3)):
        for kind, fn in ((K.CCX, decompose_ccx), (K.CCZ, decompose_ccz)):
            src = Circuit(3, (Gate(kind, (a, b, c)),))
            assert equivalent_up_to_global_phase(src, Circuit(3, tuple(fn(a, b, c))))
    for a, b in itertools.permutations(range(3), 2):
        src = Circuit(3, (Gate(K.CH, (a, b)),))
        assert equivalent_up_to_global_phase(src, Circuit(3, tuple(decompose_ch(a, b))))
        swap = Circuit(3, (Gate(K.SWAP, (a, b)),))
        assert equivalent_up_to_global_phase(swap, translate_to_target(swap))


def test_swap_translation():
    out = translate_to_target(Circuit(2, (Gate(K.SWAP, (0, 1)),)))
    assert out.gates == (cnot(0, 1), cnot(1, 0), cnot(0, 1))


def test_u3_examples():
    z = Angle.zero()
    assert decompose_u3(z, z, z, 0) == []
    h_like = decompose_u3(Angle.exact(1, 2), z, Angle.exact(1), 0)
    assert equal_up_to_phase(_1q_matrix(h_like), single_qubit_matrix(simple(K.H, 0)), 1e-8)
    args = [Angle.from_radians(x) for x in (0.3, 0.1, 0.2)]
    seq = decompose_u3(*args, 0)
    assert len(seq) == 5
    assert [g.kind for g in seq] == [K.RZ, K.RX, K.RZ, K.RX, K.RZ]
    assert equal_up_to_phase(_1q_matrix(seq), single_qubit_matrix(Gate(K.U3, (0,), tuple(args))), 1e-8)


def test_random_u3_decompositions():
    rng = random.Random(2)
    for _ in range(200):
        args = tuple(
            Angle.exact(rng.randrange(-8, 9), 4) if rng.random() < 0.3 else Angle.from_radians(rng.uniform(-4, 4))
            for _ in range(3)
        )
        src = single_qubit_matrix(Gate(K.U3, (0,), args))
        assert equal_up_to_phase(_1q_matrix(decompose_u3(*args, 0)), src, 1e-8)


def test_clifford_table_has_24_shortest_words():
    table = clifford_table()
    assert len(table) == 24
    # independent brute force: first word (length, then generator order) reaching each class
    first: list[tuple] = []
    for length in range(4):
        for word in itertools.product(CLIFFORD_GENERATORS, repeat=length):
            m = _1q_matrix([simple(k, 0) for k in word])
            if not any(equal_up_to_phase(m, _1q_matrix([simple(k, 0) for k in w]), 1e-9) for w in first):
                first.append(word)
    assert first == [w for _, w in table]


def test_resynthesis_examples():
    assert resynthesize_1q(np.eye(2)) == []
    assert resynthesize_1q(single_qubit_matrix(simple(K.H, 0))) == [simple(K.H, 0)]
    assert resynthesize_1q(single_qubit_matrix(rz(Angle.from_radians(0.3), 0))) == [rz(Angle.from_radians(0.3), 0)]


def test_resynthesis_restores_exact_angles():
    m = _1q_matrix([simple(K.T, 0), simple(K.H, 0), simple(K.T, 0)])
    out = resynthesize_1q(m)
    assert all(g.angle.is_exact for g in out)
    assert equal_up_to_phase(_1q_matrix(out), m, 1e-8)


def test_resynthesis_rejects_non_unitary():
    with pytest.raises(ValueError):
        resynthesize_1q(np.array([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        resynthesize_1q(np.eye(3))


def test_random_unitaries_resynthesize_to_at_most_three_zxz_gates():
    rng = np.random.default_rng(4)
    for _ in range(200):
        q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        u = q @ np.diag(np.diag(r) / abs(np.diag(r)))
        out = resynthesize_1q(u, 3)
        assert len(out) <= 3
        assert all(g.kind in (K.RZ, K.RX) and g.qubits == (3,) for g in out)
        assert equal_up_to_phase(_1q_matrix(out), u, 1e-8)


def test_translate_output_kinds_and_oracle():
    rng = random.Random(9)
    for _ in range(100):
        c = random_ir_circuit(rng, rng.randint(3, 5), rng.randint(1, 15), with_directives=False)
        out = translate_to_target(c)
        assert all(g.kind in TARGET_WITH_DIRECTIVES for g in out.gates)
        assert equivalent_up_to_global_phase(c, out)


def test_translate_is_identity_on_target_circuits():
    for seed in range(30):
        c = gen_random(4, 6, seed=seed)
        out = translate_to_target(c)
        assert out == c
        assert count_logical(out) == count_logical(c)


def test_translate_keeps_directives():
    c = Circuit(2, (Gate(K.BARRIER, (0, 1)), Gate(K.CH, (0, 1)), Gate(K.MEASURE, (1,), cbit=0)))
    out = translate_to_target(c)
    assert out.gates[0].kind is K.BARRIER and out.gates[-1].kind is K.MEASURE
    assert classify_angle(out.gates[5].angle) is AngleClass.T_LIKE
