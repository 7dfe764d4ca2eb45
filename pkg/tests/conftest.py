import random


from ftqcopt.angles import Angle
from ftqcopt.circuit import Circuit, Gate, GateKind, cnot, rx, rz, simple

K = GateKind


def ch_circuit() -> Circuit:
    return Circuit(2, (Gate(K.CH, (0, 1)),), "ch")


def ch_native() -> Circuit:
    return Circuit(2, (
        simple(K.S, 1), simple(K.H, 1), simple(K.T, 1), cnot(0, 1),
        rz(Angle.exact(-1, 4), 1), simple(K.H, 1), rz(Angle.exact(-1, 2), 1),
    ), "ch_native")


def ch_merged() -> Circuit:
    return Circuit(2, (
        rx(Angle.exact(-1, 2), 1), rz(Angle.exact(-1, 4), 1), cnot(0, 1),
        rz(Angle.exact(1, 4), 1), rx(Angle.exact(1, 2), 1),
    ), "ch_merged")


def random_angle(rng: random.Random) -> Angle:
    if rng.random() < 0.5:
        return Angle.exact(rng.randrange(-16, 17), rng.choice([1, 2, 3, 4, 8, 16]))
    return Angle.from_radians(rng.uniform(-10, 10))


def random_ir_circuit(rng: random.Random, n: int, size: int, with_directives: bool = True) -> Circuit:
    """Any gate kind, including extended inputs and directives."""
    kinds = [k for k in GateKind if k.arity is None or k.arity <= n]
    if not with_directives:
        kinds = [k for k in kinds if k not in (K.MEASURE, K.BARRIER)]
    gates = []
    for _ in range(size):
        k = rng.choice(kinds)
        if k is K.BARRIER:
            qs = tuple(rng.sample(range(n), rng.randint(1, n)))
        else:
            qs = tuple(rng.sample(range(n), k.arity))
        angles = tuple(random_angle(rng) for _ in range(k.num_angles))
        cbit = rng.randrange(n) if k is K.MEASURE else None
        gates.append(Gate(k, qs, angles, cbit))
    return Circuit(n, tuple(gates), "rand")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 10):
        terminalreporter.write_line(RESULTS.get(n, f"criterion {n}: NOT RUN"))
