"""Benchmark circuits, the before/after comparison harness, and report rendering."""
from __future__ import annotations

import csv
import enum
import io
import json
import random
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Iterable, Sequence

from .angles import Angle
from .circuit import Circuit, Gate, GateKind, cnot, rx, ry, rz, simple
from .estimator import EstimatorParams, count_logical, estimate_physical
from .passes import PassId, run_pipeline
from .sim import MAX_EQUIV_QUBITS, equivalent_up_to_global_phase
from .synthesis import translate_to_target

K = GateKind
ORACLE_TOL = 1e-8


class SemanticViolation(RuntimeError):
    """A pass produced a circuit that is not equivalent to its input."""


# -- generators -----------------------------------------------------------------

def controlled_phase(theta: Angle, control: int, target: int) -> list[Gate]:
    """CP(theta) = RZ(theta/2, c) . CX . RZ(-theta/2, t) . CX . RZ(theta/2, t), in circuit order."""
    half = theta.scaled(Fraction(1, 2))
    return [rz(half, target), cnot(control, target), rz(-half, target), cnot(control, target), rz(half, control)]


def _qft_ops(qubits: Sequence[int]) -> list[tuple]:
    ops: list[tuple] = []
    for a, j in enumerate(qubits):
        ops.append(("h", j))
        for b in range(a + 1, len(qubits)):
            ops.append(("cp", Angle.exact(1, 2 ** (b - a)), qubits[b], j))
    return ops


def _expand(ops: Iterable[tuple]) -> list[Gate]:
    out: list[Gate] = []
    for op in ops:
        if op[0] == "h":
            out.append(simple(K.H, op[1]))
        else:
            out.extend(controlled_phase(*op[1:]))
    return out


def _inverse_ops(ops: list[tuple]) -> list[tuple]:
    return [op if op[0] == "h" else ("cp", -op[1], op[2], op[3]) for op in reversed(ops)]


def _check_n(n: int, minimum: int = 1) -> None:
    if not isinstance(n, int) or n < minimum:
        raise ValueError(f"need at least {minimum} qubit(s), got {n!r}")


def gen_qft(n: int) -> Circuit:
    """QFT without the final swaps; controlled phases expanded into RZ/CNOT."""
    _check_n(n)
    return Circuit(n, _expand(_qft_ops(range(n))), f"qft_{n}")


def gen_qftentangled(n: int) -> Circuit:
    _check_n(n)
    ghz = [simple(K.H, 0)] + [cnot(0, i) for i in range(1, n)]
    return Circuit(n, ghz + list(gen_qft(n).gates), f"qftentangled_{n}")


def _default_phase(m: int) -> Fraction:
    bits = ("10" * m)[: m - 1] + "1"
    return Fraction(int(bits, 2), 2**m)


def gen_qpe(n: int, phase: Fraction | None = None) -> Circuit:
    """Phase estimation of RZ-type phase ``phase`` (in turns) with n-1 counting qubits.

    Counting qubit i controls U^(2^i) so that the swap-free inverse QFT leaves
    the estimate on qubits 0..n-2 with qubit 0 as the most significant bit.
    """
    _check_n(n, 2)
    m = n - 1
    phase = _default_phase(m) if phase is None else Fraction(phase)
    target = n - 1
    gates: list[Gate] = [simple(K.X, target)] + [simple(K.H, i) for i in range(m)]
    for i in range(m):
        theta = Angle(pi_multiple=2 * phase * 2**i)
        if theta.pi_multiple != 0:
            gates.extend(controlled_phase(theta, i, target))
    gates.extend(_expand(_inverse_ops(_qft_ops(range(m)))))
    return Circuit(n, gates, f"qpeexact_{n}")


def gen_dj(n: int, balanced: bool = True) -> Circuit:
    """Deutsch-Jozsa on n-1 inputs with the ancilla on the last qubit."""
    _check_n(n, 2)
    anc = n - 1
    inputs = range(n - 1)
    flips = [i for i in inputs if i % 2 == 0]
    gates = [simple(K.X, anc)] + [simple(K.H, q) for q in range(n)]
    if balanced:
        gates += [simple(K.X, q) for q in flips]
        gates += [cnot(q, anc) for q in inputs]
        gates += [simple(K.X, q) for q in flips]
    gates += [simple(K.H, q) for q in inputs]
    return Circuit(n, gates, f"dj_{n}")


def gen_graphstate(n: int, degree: int = 2, seed: int = 10) -> Circuit:
    _check_n(n)
    rng = random.Random(seed)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for a, b in pairs:
        if deg[a] < degree and deg[b] < degree:
            edges.append((a, b))
            deg[a] += 1
            deg[b] += 1
    gates = [simple(K.H, q) for q in range(n)]
    for a, b in sorted(edges):
        gates += [simple(K.H, b), cnot(a, b), simple(K.H, b)]
    return Circuit(n, gates, f"graphstate_{n}")


_CLIFFORD_1Q = (K.X, K.Y, K.Z, K.H, K.S, K.SDG, K.SX)
_ANY_1Q = _CLIFFORD_1Q + (K.T, K.TDG, K.RX, K.RY, K.RZ)


def _random_angle(rng: random.Random, clifford_only: bool) -> Angle:
    if clifford_only:
        return Angle.exact(rng.randrange(4), 2)
    choice = rng.random()
    if choice < 0.3:
        return Angle.exact(rng.randrange(-7, 8), 4)
    if choice < 0.5:
        return Angle.exact(rng.randrange(-15, 16, 2), 8)
    return Angle.from_radians(rng.uniform(-3.0, 3.0))


def gen_random(n: int, depth: int, seed: int = 0, clifford_only: bool = False) -> Circuit:
    """``depth`` layers; each pairs some qubits into CNOTs and gives the rest a 1q gate."""
    _check_n(n)
    rng = random.Random(seed)
    gates: list[Gate] = []
    pool = _CLIFFORD_1Q + (K.RX, K.RY, K.RZ) if clifford_only else _ANY_1Q
    for _ in range(depth):
        qs = list(range(n))
        rng.shuffle(qs)
        while qs:
            if len(qs) >= 2 and rng.random() < 0.35:
                gates.append(cnot(qs.pop(), qs.pop()))
                continue
            q = qs.pop()
            kind = rng.choice(pool)
            if kind in (K.RX, K.RY, K.RZ):
                maker = {K.RX: rx, K.RY: ry, K.RZ: rz}[kind]
                gates.append(maker(_random_angle(rng, clifford_only), q))
            else:
                gates.append(simple(kind, q))
    return Circuit(n, gates, f"random_{n}_{depth}_{seed}")


GENERATORS = {
    "dj": gen_dj,
    "graphstate": gen_graphstate,
    "qft": gen_qft,
    "qftentangled": gen_qftentangled,
    "qpe": gen_qpe,
    "qpeexact": gen_qpe,
    "random": gen_random,
}


def builtin_circuit(spec: str) -> Circuit:
    """Build from ``name:n[:extra...]``, e.g. ``qft:10`` or ``random:6:20:3``."""
    name, *args = spec.split(":")
    if name not in GENERATORS:
        raise ValueError(f"unknown builtin circuit {name!r}; known: {sorted(GENERATORS)}")
    try:
        ints = [int(a) for a in args]
    except ValueError:
        raise ValueError(f"builtin arguments must be integers: {spec!r}") from None
    if not ints:
        raise ValueError(f"builtin {name!r} needs a qubit count, e.g. {name}:10")
    return GENERATORS[name](*ints)


def benchmark_suite(n: int = 10) -> list[Circuit]:
    return [gen_dj(n), gen_graphstate(n), gen_qft(n), gen_qftentangled(n), gen_qpe(n)]


# -- comparison -----------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonRecord:
    circuit_name: str
    pass_pipeline: str
    gate_count_before: int
    gate_count_after: int
    total_physical_qubits_before: int
    total_physical_qubits_after: int
    runtime_before: int
    runtime_after: int
    delta_g: int
    delta_q: int
    delta_t: int
    unverified: bool = False
    note: str = ""

    @property
    def deltas(self) -> tuple[int, int, int]:
        return self.delta_g, self.delta_q, self.delta_t


def percent_change(before: int, after: int) -> int | None:
    """Signed percent change rounded half away from zero; None when before is 0."""
    if before == 0:
        return None
    x = Fraction(100 * (after - before), before)
    mag = int(abs(x) + Fraction(1, 2))
    return mag if x >= 0 else -mag


def _strip_terminal_measurements(c: Circuit) -> Circuit | None:
    measured: set[int] = set()
    kept = []
    for g in c.gates:
        if g.kind is K.MEASURE:
            measured.update(g.qubits)
            continue
        if g.kind is not K.BARRIER and measured & set(g.qubits):
            return None
        kept.append(g)
    return c.with_gates(kept)


def verify_equivalent(before: Circuit, after: Circuit) -> bool | None:
    """True/False from the oracle, or None when the circuits are too large or
    measure mid-circuit."""
    if before.num_qubits > MAX_EQUIV_QUBITS:
        return None
    a, b = _strip_terminal_measurements(before), _strip_terminal_measurements(after)
    if a is None or b is None:
        return None
    return equivalent_up_to_global_phase(a, b, ORACLE_TOL)


def compare(c: Circuit, passes: Sequence[PassId], params: EstimatorParams | None = None) -> ComparisonRecord:
    params = params or EstimatorParams()
    passes = [PassId(p) for p in passes]
    before = translate_to_target(c)
    after = run_pipeline(c, passes)
    verdict = verify_equivalent(before, after)
    if verdict is False:
        raise SemanticViolation(f"pipeline {_pipeline_name(passes)!r} changed the semantics of {c.name!r}")
    est_b = estimate_physical(count_logical(before), params)
    est_a = estimate_physical(count_logical(after), params)
    g_b, g_a = before.gate_count(), after.gate_count()
    raw = {
        "delta_g": percent_change(g_b, g_a),
        "delta_q": percent_change(est_b.total_physical_qubits, est_a.total_physical_qubits),
        "delta_t": percent_change(est_b.runtime, est_a.runtime),
    }
    zero_base = [k for k, v in raw.items() if v is None]
    notes = [f"{k} base is zero" for k in zero_base]
    if verdict is None:
        notes.append("not oracle-checked")
    return ComparisonRecord(
        circuit_name=c.name,
        pass_pipeline=_pipeline_name(passes),
        gate_count_before=g_b,
        gate_count_after=g_a,
        total_physical_qubits_before=est_b.total_physical_qubits,
        total_physical_qubits_after=est_a.total_physical_qubits,
        runtime_before=est_b.runtime,
        runtime_after=est_a.runtime,
        unverified=verdict is None,
        note="; ".join(notes),
        **{k: v or 0 for k, v in raw.items()},
    )


def _pipeline_name(passes: Sequence[PassId]) -> str:
    return "+".join(p.value for p in passes) or "identity"


class FindingTag(enum.Enum):
    F1_CLIFFORD_ONLY = "F1"
    F2_ROTATION_REDUCTION = "F2"
    F3_TRADEOFF = "F3"
    NEUTRAL = "neutral"
    MIXED = "mixed"


F3_GATE_THRESHOLD = 2


def classify_deltas(dg: int, dq: int, dt: int, f3_threshold: int = F3_GATE_THRESHOLD) -> FindingTag:
    if dg < 0 and dq == 0 and dt == 0:
        return FindingTag.F1_CLIFFORD_ONLY
    if dg < 0 and dq < 0 and dt <= 0:
        return FindingTag.F2_ROTATION_REDUCTION
    if abs(dg) <= f3_threshold and dq * dt < 0:
        return FindingTag.F3_TRADEOFF
    if dg == dq == dt == 0:
        return FindingTag.NEUTRAL
    return FindingTag.MIXED


def classify_finding(rec: ComparisonRecord, f3_threshold: int = F3_GATE_THRESHOLD) -> FindingTag:
    return classify_deltas(*rec.deltas, f3_threshold=f3_threshold)


# -- reports --------------------------------------------------------------------

RECORD_FIELDS = [f.name for f in fields(ComparisonRecord)]


def _signed(v: int) -> str:
    return f"+{v}" if v > 0 else str(v)


def _sorted(records: Iterable[ComparisonRecord]) -> list[ComparisonRecord]:
    return sorted(records, key=lambda r: (r.circuit_name, r.pass_pipeline))


def render_report(records: Iterable[ComparisonRecord], fmt: str = "markdown") -> str:
    records = _sorted(records)
    fmt = {"md": "markdown"}.get(fmt, fmt)
    if fmt == "markdown":
        lines = [
            "| circuit | passes | NISQ #G | FTQC #Q | FTQC t | finding |",
            "|---|---|---:|---:|---:|---|",
        ]
        for r in records:
            name = r.circuit_name + (" (unverified)" if r.unverified else "")
            lines.append(
                f"| {name} | {r.pass_pipeline} | {_signed(r.delta_g)} | {_signed(r.delta_q)} "
                f"| {_signed(r.delta_t)} | {classify_finding(r).value} |"
            )
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(RECORD_FIELDS)
        for r in records:
            w.writerow(["true" if v is True else "false" if v is False else v for v in asdict(r).values()])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([asdict(r) for r in records], indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def parse_csv_report(text: str) -> list[ComparisonRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != RECORD_FIELDS:
        raise ValueError("not a comparison report: header mismatch")
    out = []
    for row in rows[1:]:
        d = dict(zip(RECORD_FIELDS, row))
        for f in fields(ComparisonRecord):
            if f.type == "int":
                d[f.name] = int(d[f.name])
            elif f.type == "bool":
                d[f.name] = d[f.name] == "true"
        out.append(ComparisonRecord(**d))
    return out
