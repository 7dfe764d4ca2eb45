"""Optimization passes over target-set circuits.

Commutation rules used by every pass (deliberately conservative):

* Z-axis gates (Z, S, SDG, T, TDG, RZ) commute with a CNOT on its control;
* X-axis gates (X, SX, RX) commute with a CNOT on its target;
* single-qubit gates about the same axis commute with each other;
* nothing else commutes.
"""
from __future__ import annotations

import enum
from typing import Callable, Iterable

import numpy as np

from .angles import Angle, AngleClass, add_angles, classify_angle
from .circuit import Circuit, Gate, GateKind, rotation_layers, rx, ry, rz, simple, to_dag
from .sim import single_qubit_matrix
from .synthesis import resynthesize_1q, translate_to_target

K = GateKind
MAX_SWEEPS = 100

Z_AXIS = frozenset({K.Z, K.S, K.SDG, K.T, K.TDG, K.RZ})
X_AXIS = frozenset({K.X, K.SX, K.RX})
Y_AXIS = frozenset({K.Y, K.RY})
SINGLE_QUBIT_UNITARY = Z_AXIS | X_AXIS | Y_AXIS | {K.H}

_FIXED_ANGLE = {
    K.Z: Angle.exact(1), K.S: Angle.exact(1, 2), K.SDG: Angle.exact(-1, 2),
    K.T: Angle.exact(1, 4), K.TDG: Angle.exact(-1, 4),
    K.X: Angle.exact(1), K.SX: Angle.exact(1, 2), K.Y: Angle.exact(1),
}


class PassId(enum.Enum):
    REMOVE_REDUNDANCIES = "remove-redundancies"
    MERGE_1Q = "merge-1q"
    COMMUTATIVE_CANCELLATION = "commutative-cancellation"
    COMMUTE_THROUGH_MULTIS = "commute-through-multis"
    TEMPLATE_REWRITE = "template-rewrite"
    RESCHEDULE_ASAP = "reschedule-rotations:asap"
    RESCHEDULE_ALAP = "reschedule-rotations:alap"

    @classmethod
    def parse(cls, text: str) -> PassId:
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(p.value for p in cls)
            raise ValueError(f"unknown pass {text!r}; expected one of: {names}") from None


def parse_pass_list(text: str) -> list[PassId]:
    return [PassId.parse(t) for t in text.split(",") if t.strip()]


# -- axis helpers ---------------------------------------------------------------

def axis_of(g: Gate) -> str | None:
    if len(g.qubits) != 1:
        return None
    if g.kind in Z_AXIS:
        return "z"
    if g.kind in X_AXIS:
        return "x"
    if g.kind in Y_AXIS:
        return "y"
    return None


def axis_angle(g: Gate) -> Angle:
    return g.angle if g.kind in (K.RX, K.RY, K.RZ) else _FIXED_ANGLE[g.kind]


def _snap(a: Angle) -> Angle:
    return a if a.is_exact else Angle.from_radians(a.radians)


def axis_gate(axis: str, angle: Angle, q: int) -> Gate | None:
    """Cheapest named gate rotating by ``angle`` about ``axis``; None for identity."""
    angle = _snap(angle)
    cls = classify_angle(angle)
    if cls is AngleClass.IDENTITY:
        return None
    f = angle.pi_multiple
    if axis == "z":
        named = {1: K.Z, 0.5: K.S, -0.5: K.SDG, 0.25: K.T, -0.25: K.TDG}
        if f is not None and float(f) in named:
            return simple(named[float(f)], q)
        return rz(angle, q)
    if axis == "x":
        if f == 1:
            return simple(K.X, q)
        if f is not None and f * 2 == 1:
            return simple(K.SX, q)
        return rx(angle, q)
    if f == 1:
        return simple(K.Y, q)
    return ry(angle, q)


def merge_axis(g: Gate, h: Gate) -> Gate | None:
    return axis_gate(axis_of(g), add_angles(axis_angle(g), axis_angle(h)), g.qubits[0])


def commutes_with_cnot(g: Gate, cx: Gate) -> bool:
    """Rule table for a single-qubit ``g`` against a CNOT sharing its wire."""
    q = g.qubits[0]
    ax = axis_of(g)
    if ax == "z":
        return q == cx.qubits[0]
    if ax == "x":
        return q == cx.qubits[1]
    return False


def _commutes(g: Gate, h: Gate) -> bool:
    """Whether single-qubit ``g`` commutes with ``h`` (which shares its wire)."""
    if h.kind is K.CNOT:
        return commutes_with_cnot(g, h)
    ax = axis_of(g)
    return ax is not None and len(h.qubits) == 1 and axis_of(h) == ax


def _next_on(gates: list[Gate], i: int, q: int) -> int | None:
    for j in range(i + 1, len(gates)):
        if q in gates[j].qubits:
            return j
    return None


def _prev_on(gates: list[Gate], i: int, q: int) -> int | None:
    for j in range(i - 1, -1, -1):
        if q in gates[j].qubits:
            return j
    return None


def _replace(gates: list[Gate], i: int, new: Iterable[Gate], drop: Iterable[int]) -> list[Gate]:
    """Put ``new`` at position ``i`` and delete indices ``drop`` (and ``i``)."""
    drop = set(drop) | {i}
    out = []
    for k, g in enumerate(gates):
        if k == i:
            out.extend(new)
        if k not in drop:
            out.append(g)
    return out


def _fixpoint(step: Callable[[list[Gate]], list[Gate] | None], c: Circuit) -> Circuit:
    """Apply ``step`` (returns None when it made no change) up to MAX_SWEEPS times."""
    gates = list(c.gates)
    for _ in range(MAX_SWEEPS):
        new = step(gates)
        if new is None:
            break
        gates = new
    return c.with_gates(gates)


# -- remove_redundancies --------------------------------------------------------

def _redundancy_sweep(gates: list[Gate]) -> list[Gate] | None:
    changed = False
    i = 0
    while i < len(gates):
        g = gates[i]
        j = _next_on(gates, i, g.qubits[0])
        if j is None or set(gates[j].qubits) != set(g.qubits):
            i += 1
            continue
        h = gates[j]
        if len(g.qubits) > 1 and any(_next_on(gates, i, q) != j for q in g.qubits[1:]):
            i += 1
            continue
        if g.kind is K.CNOT and h.kind is K.CNOT and g.qubits == h.qubits:
            gates = _replace(gates, i, [], [j])
        elif g.kind is K.H and h.kind is K.H:
            gates = _replace(gates, i, [], [j])
        elif axis_of(g) is not None and axis_of(g) == axis_of(h):
            merged = merge_axis(g, h)
            gates = _replace(gates, i, [merged] if merged else [], [j])
        else:
            i += 1
            continue
        changed = True
    return gates if changed else None


def remove_redundancies(c: Circuit) -> Circuit:
    """Cancel adjacent inverse pairs and merge adjacent same-axis rotations."""
    return _fixpoint(_redundancy_sweep, c)


# -- merge_1q -------------------------------------------------------------------

def merge_1q(c: Circuit) -> Circuit:
    """Resynthesize each maximal single-qubit run on a wire, keeping the result
    only when it is strictly shorter."""
    runs: list[list[int]] = []
    open_run: dict[int, list[int]] = {}
    for i, g in enumerate(c.gates):
        if g.kind in SINGLE_QUBIT_UNITARY:
            open_run.setdefault(g.qubits[0], []).append(i)
            continue
        for q in g.qubits:
            if q in open_run:
                runs.append(open_run.pop(q))
    runs.extend(open_run.values())

    replace_at: dict[int, list[Gate]] = {}
    dropped: set[int] = set()
    for run in runs:
        u = np.eye(2, dtype=complex)
        for i in run:
            u = single_qubit_matrix(c.gates[i]) @ u
        q = c.gates[run[0]].qubits[0]
        new = resynthesize_1q(u, q)
        if len(new) < len(run):
            replace_at[run[0]] = new
            dropped.update(run)
    out: list[Gate] = []
    for i, g in enumerate(c.gates):
        if i in replace_at:
            out.extend(replace_at[i])
        if i not in dropped:
            out.append(g)
    return c.with_gates(out)


# -- commutative_cancellation ----------------------------------------------------

def _commutation_sweep(gates: list[Gate]) -> list[Gate] | None:
    changed = False
    i = 0
    while i < len(gates):
        g = gates[i]
        new = None
        if axis_of(g) is not None or g.kind is K.H:
            q = g.qubits[0]
            for j in range(i + 1, len(gates)):
                h = gates[j]
                if q not in h.qubits:
                    continue
                if g.kind is K.H:
                    if h.kind is K.H:
                        new = _replace(gates, i, [], [j])
                    break
                if len(h.qubits) == 1 and axis_of(h) == axis_of(g):
                    merged = merge_axis(g, h)
                    new = _place_merged(gates, i, j, merged)
                    break
                if not _commutes(g, h):
                    break
        elif g.kind is K.CNOT:
            for j in range(i + 1, len(gates)):
                h = gates[j]
                if not set(h.qubits) & set(g.qubits):
                    continue
                if h.kind is K.CNOT and h.qubits == g.qubits:
                    new = _replace(gates, i, [], [j])
                    break
                if len(h.qubits) == 1 and commutes_with_cnot(h, g):
                    continue
                break
        if new is None:
            i += 1
        else:
            gates = new
            changed = True
    return gates if changed else None


def _place_merged(gates: list[Gate], i: int, j: int, merged: Gate | None) -> list[Gate]:
    """Drop gates i and j and put ``merged`` in the slot of the commuting window
    [i, j] on its wire that gives the fewest rotation layers (earliest on ties)."""
    rest = [g for k, g in enumerate(gates) if k not in (i, j)]
    if merged is None:
        return rest
    q = merged.qubits[0]
    # slots: just before each gate on wire q inside the window, and at j
    slots = [i] + [k - 1 for k in range(i + 1, j) if q in gates[k].qubits] + [j - 1]
    best, best_layers = None, None
    for pos in dict.fromkeys(slots):
        trial = rest[:pos] + [merged] + rest[pos:]
        layers = _layers_of(trial)
        if best_layers is None or layers < best_layers:
            best, best_layers = trial, layers
    return best


def _layers_of(gates: list[Gate]) -> int:
    n = 1 + max((q for g in gates for q in g.qubits), default=0)
    return rotation_layers(Circuit(n, gates))


def commutative_cancellation(c: Circuit) -> Circuit:
    """Commute gates through CNOTs per the rule table, cancelling or merging
    partners that meet.

    A merged rotation may sit anywhere in the window it commuted through; the
    slot with the fewest rotation layers is used.
    """
    return _fixpoint(_commutation_sweep, c)


# -- commute_through_multis -----------------------------------------------------

def _push_early(gates: list[Gate], i: int, movable: Callable[[Gate, Gate], bool]) -> int:
    """Earliest index single-qubit ``gates[i]`` can reach moving left past gates
    accepted by ``movable``."""
    g = gates[i]
    q = g.qubits[0]
    dest = i
    p = _prev_on(gates, i, q)
    while p is not None and movable(g, gates[p]):
        dest = p
        p = _prev_on(gates, p, q)
    return dest


def _push_late(gates: list[Gate], i: int, movable: Callable[[Gate, Gate], bool]) -> int:
    g = gates[i]
    q = g.qubits[0]
    dest = i
    n = _next_on(gates, i, q)
    while n is not None and movable(g, gates[n]):
        dest = n
        n = _next_on(gates, n, q)
    return dest


def _move(gates: list[Gate], src: int, dest: int) -> list[Gate]:
    out = list(gates)
    g = out.pop(src)
    out.insert(dest, g)
    return out


def _past_multis(g: Gate, h: Gate) -> bool:
    return h.kind is K.CNOT and commutes_with_cnot(g, h)


def _multis_sweep(gates: list[Gate]) -> list[Gate] | None:
    moved = False
    for i in range(len(gates)):
        if axis_of(gates[i]) is None:
            continue
        dest = _push_early(gates, i, _past_multis)
        if dest != i:
            gates = _move(gates, i, dest)
            moved = True
    cleaned = _redundancy_sweep(list(gates))
    if cleaned is None:
        return gates if moved else None
    return cleaned


def commute_through_multis(c: Circuit) -> Circuit:
    """Move single-qubit gates earlier through commuting CNOTs, then remove redundancies."""
    return remove_redundancies(_fixpoint(_multis_sweep, c))


# -- template_rewrite -----------------------------------------------------------

def _template_at(gates: list[Gate], i: int) -> list[Gate] | None:
    g = gates[i]
    if g.kind is not K.CNOT:
        return None
    a, b = g.qubits
    pa, pb = _prev_on(gates, i, a), _prev_on(gates, i, b)
    na, nb = _next_on(gates, i, a), _next_on(gates, i, b)

    def is_h(k):
        return k is not None and gates[k].kind is K.H

    # T1: H(a) H(b) CNOT(a,b) H(a) H(b) -> CNOT(b,a)
    if is_h(pa) and is_h(pb) and is_h(na) and is_h(nb):
        return _replace(gates, i, [simple(K.CNOT, b, a)], [pa, pb, na, nb])
    if na is None or len(gates[na].qubits) != 1:
        return None
    mid = gates[na]
    close = _next_on(gates, na, a)
    if close is None or close != nb or gates[close].kind is not K.CNOT or gates[close].qubits != (a, b):
        return None
    # T2: CNOT(a,b) RZ(theta,a) CNOT(a,b) -> RZ(theta,a)
    if mid.kind is K.RZ:
        return _replace(gates, i, [mid], [na, close])
    # T3: CNOT(a,b) X(a) CNOT(a,b) -> X(a) X(b)
    if mid.kind is K.X:
        return _replace(gates, i, [simple(K.X, a), simple(K.X, b)], [na, close])
    return None


def _template_sweep(gates: list[Gate]) -> list[Gate] | None:
    changed = False
    i = 0
    while i < len(gates):
        new = _template_at(gates, i)
        if new is None:
            i += 1
        else:
            gates = new
            changed = True
    return gates if changed else None


def template_rewrite(c: Circuit) -> Circuit:
    return _fixpoint(_template_sweep, c)


# -- reschedule_rotations -------------------------------------------------------

def _past_non_rotation(g: Gate, h: Gate) -> bool:
    # rotations never leapfrog each other; that would only permute them
    return not h.is_arbitrary_rotation and _commutes(g, h)


def _alap_levels(c: Circuit) -> list[int]:
    dag = to_dag(c)
    depth = [0] * len(c.gates)
    for i in range(len(c.gates) - 1, -1, -1):
        depth[i] = 1 + max((depth[s] for s in dag.succs[i]), default=0)
    return [-d for d in depth]


def _linearize(c: Circuit, levels: list[int]) -> Circuit:
    order = sorted(range(len(c.gates)), key=lambda k: (levels[k], k))
    return c.with_gates(c.gates[k] for k in order)


def _schedule_early(c: Circuit) -> Circuit:
    gates = list(c.gates)
    layers = rotation_layers(c)
    for i in range(len(gates)):
        if gates[i].is_arbitrary_rotation:
            dest = _push_early(gates, i, _past_non_rotation)
            if dest != i:
                trial = _move(gates, i, dest)
                trial_layers = rotation_layers(c.with_gates(trial))
                if trial_layers <= layers:
                    gates, layers = trial, trial_layers
    out = c.with_gates(gates)
    return _linearize(out, to_dag(out).asap_levels())


def _schedule_late(c: Circuit) -> Circuit:
    gates = list(c.gates)
    for i in range(len(gates) - 1, -1, -1):
        if gates[i].is_arbitrary_rotation:
            dest = _push_late(gates, i, _past_non_rotation)
            if dest != i:
                gates = _move(gates, i, dest)
    out = c.with_gates(gates)
    return _linearize(out, _alap_levels(out))


def _schedule_asap(c: Circuit) -> Circuit:
    early = _schedule_early(c)
    late = _schedule_late(c)
    late = _linearize(late, to_dag(late).asap_levels())
    return late if rotation_layers(late) < rotation_layers(early) else early


def reschedule_rotations(c: Circuit, mode: str = "asap") -> Circuit:
    """Move arbitrary-angle rotations through commuting gates.

    ``asap`` pulls each rotation as early as the rules allow, keeping a move only
    when it does not add a rotation layer, and falls back to the late placement
    when that packs rotations into fewer layers. ``alap`` pushes each one as
    late as possible. Both repeat until stable; the gate multiset never changes.
    """
    mode = mode.lower()
    if mode not in ("asap", "alap"):
        raise ValueError(f"unknown schedule mode {mode!r}")
    step = _schedule_asap if mode == "asap" else _schedule_late
    for _ in range(MAX_SWEEPS):
        nxt = step(c)
        if nxt == c:
            break
        c = nxt
    return c


# -- pipeline -------------------------------------------------------------------

PASSES: dict[PassId, Callable[[Circuit], Circuit]] = {
    PassId.REMOVE_REDUNDANCIES: remove_redundancies,
    PassId.MERGE_1Q: merge_1q,
    PassId.COMMUTATIVE_CANCELLATION: commutative_cancellation,
    PassId.COMMUTE_THROUGH_MULTIS: commute_through_multis,
    PassId.TEMPLATE_REWRITE: template_rewrite,
    PassId.RESCHEDULE_ASAP: lambda c: reschedule_rotations(c, "asap"),
    PassId.RESCHEDULE_ALAP: lambda c: reschedule_rotations(c, "alap"),
}


def run_pipeline(c: Circuit, passes: Iterable[PassId]) -> Circuit:
    """translate -> passes in order -> translate."""
    out = translate_to_target(c)
    for p in passes:
        out = PASSES[PassId(p)](out)
    return translate_to_target(out)
