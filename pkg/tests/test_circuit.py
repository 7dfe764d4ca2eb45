import random

import pytest

from conftest import ch_native
from ftqcopt.angles import Angle
from ftqcopt.bench import gen_random
from ftqcopt.circuit import Circuit, Gate, GateKind, cnot, rotation_layers, rz, simple, to_dag
from ftqcopt.sim import equivalent_up_to_global_phase

K = GateKind


def test_gate_arity_checked():
    with pytest.raises(ValueError):
        Gate(K.CNOT, (0,))
    with pytest.raises(ValueError):
        Gate(K.H, (0, 1))


def test_gate_operands_distinct():
    with pytest.raises(ValueError):
        Gate(K.CNOT, (1, 1))
    with pytest.raises(ValueError):
        Gate(K.CCX, (0, 1, 0))


def test_gate_angle_count_checked():
    with pytest.raises(ValueError):
        Gate(K.RZ, (0,))
    with pytest.raises(ValueError):
        Gate(K.U3, (0,), (Angle.zero(),))
    with pytest.raises(TypeError):
        Gate(K.RZ, (0,), (0.3,))


def test_circuit_index_range_checked():
    with pytest.raises(ValueError):
        Circuit(2, (simple(K.H, 2),))
    with pytest.raises(ValueError):
        Circuit(0)


def test_gate_count_ignores_barriers():
    c = Circuit(2, (simple(K.H, 0), Gate(K.BARRIER, (0, 1)), simple(K.X, 1)))
    assert c.gate_count() == 2
    assert len(c) == 3


def test_dag_disjoint_gates_are_roots():
    dag = to_dag(Circuit(2, (simple(K.H, 0), simple(K.X, 1))))
    assert dag.roots() == [0, 1]
    assert dag.edges() == set()


def test_dag_chain():
    dag = to_dag(Circuit(2, (simple(K.H, 0), cnot(0, 1), simple(K.X, 1))))
    assert dag.edges() == {(0, 1), (1, 2)}


def test_dag_of_native_ch_sequence():
    dag = to_dag(ch_native())
    # S, H, T on the target form a chain feeding the CNOT (node 3)
    assert dag.preds[3] == frozenset({2})
    assert {(0, 1), (1, 2), (2, 3)} <= dag.edges()
    assert dag.succs[3] == frozenset({4})


def test_barrier_is_a_fence():
    c = Circuit(2, (simple(K.H, 0), Gate(K.BARRIER, (0, 1)), simple(K.X, 1)))
    dag = to_dag(c)
    assert dag.edges() == {(0, 1), (1, 2)}
    assert dag.asap_levels() == [1, 1, 2]


def test_rotation_layer_examples():
    assert rotation_layers(ch_native()) == 0
    par = Circuit(2, (rz(Angle.from_radians(0.3), 0), rz(Angle.from_radians(0.4), 1)))
    assert rotation_layers(par) == 1
    ser = Circuit(2, (rz(Angle.from_radians(0.3), 0), rz(Angle.from_radians(0.4), 0)))
    assert rotation_layers(ser) == 2


def test_rotation_layers_ignore_t_like_and_clifford_rotations():
    c = Circuit(1, (rz(Angle.exact(1, 4), 0), rz(Angle.exact(1, 2), 0), rz(Angle.from_radians(0.3), 0)))
    assert rotation_layers(c) == 1


def test_dag_linearizations_are_equivalent():
    rng = random.Random(7)
    for seed in range(100):
        c = gen_random(rng.randint(1, 5), rng.randint(1, 10), seed=seed)
        dag = to_dag(c)
        order = dag.topological_order(key=lambda i: rng.random())
        assert sorted(order) == list(range(len(c.gates)))
        pos = {g: k for k, g in enumerate(order)}
        assert all(pos[a] < pos[b] for a, b in dag.edges())
        assert equivalent_up_to_global_phase(c, c.with_gates(c.gates[i] for i in order))


def test_layers_invariant_under_clifford_on_idle_qubits():
    rng = random.Random(3)
    for seed in range(50):
        c = gen_random(4, 8, seed=seed)
        base = rotation_layers(c)
        idle = Circuit(6, c.gates)
        extra = [simple(rng.choice([K.H, K.S, K.X, K.Z]), rng.choice([4, 5])) for _ in range(10)]
        gates = list(idle.gates)
        for g in extra:
            gates.insert(rng.randrange(len(gates) + 1), g)
        assert rotation_layers(idle.with_gates(gates)) == base


def test_name_not_part_of_equality():
    assert Circuit(1, (), "a") == Circuit(1, (), "b")
