"""Circuit IR: gate kinds, immutable gates and circuits, dependency DAG."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .angles import Angle, AngleClass, classify_angle


class GateKind(enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"
    H = "h"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    SX = "sx"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    CNOT = "cx"
    # extended input kinds, removed by translate_to_target
    CH = "ch"
    CCX = "ccx"
    CCZ = "ccz"
    SWAP = "swap"
    U3 = "u3"
    MEASURE = "measure"
    BARRIER = "barrier"

    @property
    def arity(self) -> int | None:
        """Operand count; None for BARRIER, which takes any number."""
        return _ARITY.get(self, 1)

    @property
    def num_angles(self) -> int:
        if self in ROTATIONS:
            return 1
        return 3 if self is GateKind.U3 else 0


_ARITY = {
    GateKind.CNOT: 2,
    GateKind.CH: 2,
    GateKind.SWAP: 2,
    GateKind.CCX: 3,
    GateKind.CCZ: 3,
    GateKind.BARRIER: None,
}

ROTATIONS = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ})
TARGET_KINDS = frozenset(
    {
        GateKind.X, GateKind.Y, GateKind.Z, GateKind.H, GateKind.S, GateKind.SDG,
        GateKind.T, GateKind.TDG, GateKind.SX, GateKind.RX, GateKind.RY, GateKind.RZ,
        GateKind.CNOT,
    }
)
NON_UNITARY = frozenset({GateKind.MEASURE, GateKind.BARRIER})
TARGET_WITH_DIRECTIVES = TARGET_KINDS | NON_UNITARY


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]
    angles: tuple[Angle, ...] = ()
    # classical bit written by MEASURE; kept for emission only
    cbit: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "angles", tuple(self.angles))
        arity = self.kind.arity
        if arity is None:
            if not self.qubits:
                raise ValueError("barrier needs at least one qubit")
        elif len(self.qubits) != arity:
            raise ValueError(f"{self.kind.name} takes {arity} qubit(s), got {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind.name} operands must be distinct: {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")
        if len(self.angles) != self.kind.num_angles:
            raise ValueError(f"{self.kind.name} takes {self.kind.num_angles} angle(s)")
        if any(not isinstance(a, Angle) for a in self.angles):
            raise TypeError("gate angles must be Angle instances")

    @property
    def angle(self) -> Angle:
        return self.angles[0]

    @property
    def is_arbitrary_rotation(self) -> bool:
        return self.kind in ROTATIONS and classify_angle(self.angles[0]) is AngleClass.ARBITRARY

    def __str__(self) -> str:
        args = f"({', '.join(str(a) for a in self.angles)})" if self.angles else ""
        return f"{self.kind.name}{args} {','.join(map(str, self.qubits))}"


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = ()
    name: str = field(default="circuit", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        for g in self.gates:
            if any(q >= self.num_qubits for q in g.qubits):
                raise ValueError(f"gate {g} out of range for {self.num_qubits} qubits")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def with_gates(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.num_qubits, tuple(gates), self.name)

    def gate_count(self) -> int:
        """Gate count as reported for NISQ comparisons; barriers do not count."""
        return sum(1 for g in self.gates if g.kind is not GateKind.BARRIER)

    def count_ops(self) -> dict[GateKind, int]:
        out: dict[GateKind, int] = {}
        for g in self.gates:
            out[g.kind] = out.get(g.kind, 0) + 1
        return out


# -- small constructors used throughout the package and tests -------------------

def _g(kind: GateKind, *qubits: int, angles: Sequence[Angle] = ()) -> Gate:
    return Gate(kind, qubits, tuple(angles))


def rz(theta: Angle, q: int) -> Gate:
    return _g(GateKind.RZ, q, angles=(theta,))


def rx(theta: Angle, q: int) -> Gate:
    return _g(GateKind.RX, q, angles=(theta,))


def ry(theta: Angle, q: int) -> Gate:
    return _g(GateKind.RY, q, angles=(theta,))


def cnot(control: int, target: int) -> Gate:
    return _g(GateKind.CNOT, control, target)


def simple(kind: GateKind, *qubits: int) -> Gate:
    return _g(kind, *qubits)


# -- dependency DAG -------------------------------------------------------------

@dataclass(frozen=True)
class CircuitDAG:
    """Gate dependency graph. Node i is ``gates[i]``; edges join consecutive gates on a wire."""

    gates: tuple[Gate, ...]
    preds: tuple[frozenset[int], ...]
    succs: tuple[frozenset[int], ...]

    def edges(self) -> set[tuple[int, int]]:
        return {(p, i) for i, ps in enumerate(self.preds) for p in ps}

    def roots(self) -> list[int]:
        return [i for i, ps in enumerate(self.preds) if not ps]

    def topological_order(self, key=None) -> list[int]:
        """Kahn's algorithm; ``key`` picks among ready nodes (default: lowest index)."""
        indeg = [len(p) for p in self.preds]
        ready = [i for i, d in enumerate(indeg) if d == 0]
        order = []
        while ready:
            ready.sort(key=key)
            i = ready.pop(0)
            order.append(i)
            for s in sorted(self.succs[i]):
                indeg[s] -= 1
                if indeg[s] == 0:
                    ready.append(s)
        return order

    def asap_levels(self) -> list[int]:
        """Level of each node: 1 + max predecessor level. Barriers take the max of
        their predecessors without adding a level."""
        levels = [0] * len(self.gates)
        for i, g in enumerate(self.gates):
            base = max((levels[p] for p in self.preds[i]), default=0)
            levels[i] = base if g.kind is GateKind.BARRIER else base + 1
        return levels


def to_dag(c: Circuit) -> CircuitDAG:
    last: dict[int, int] = {}
    preds: list[set[int]] = []
    succs: list[set[int]] = [set() for _ in c.gates]
    for i, g in enumerate(c.gates):
        ps = set()
        for q in g.qubits:
            if q in last:
                ps.add(last[q])
                succs[last[q]].add(i)
            last[q] = i
        preds.append(ps)
    return CircuitDAG(c.gates, tuple(map(frozenset, preds)), tuple(map(frozenset, succs)))


def rotation_layers(c: Circuit) -> int:
    """Number of ASAP levels holding at least one arbitrary-angle RX/RY/RZ."""
    dag = to_dag(c)
    levels = dag.asap_levels()
    return len({levels[i] for i, g in enumerate(c.gates) if g.is_arbitrary_rotation})
