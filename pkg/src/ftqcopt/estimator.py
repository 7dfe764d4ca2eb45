"""Logical resource counts and a surface-code physical estimate.

The physical model is a plain analytic one: a rotated-surface-code layout
whose distance is chosen against the logical share of the error budget, plus
a pool of identical T factories sized so that T-state supply keeps pace with
the (optionally stretched) logical depth.
"""
from __future__ import annotations

import json
import math
from dataclasses import MISSING, asdict, dataclass, fields, replace

from .angles import AngleClass, classify_angle
from .circuit import ROTATIONS, Circuit, GateKind, TARGET_WITH_DIRECTIVES, rotation_layers

MAX_DISTANCE = 101


class EstimatorInfeasible(ValueError):
    """No code distance up to MAX_DISTANCE meets the error budget."""


@dataclass(frozen=True)
class LogicalCounts:
    logical_qubits: int
    t_gates: int = 0
    rotation_gates: int = 0
    rotation_layers: int = 0
    ccz_gates: int = 0
    ccix_gates: int = 0
    measurements: int = 0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{f.name} must be a non-negative integer, got {v!r}")
        if self.rotation_layers > self.rotation_gates:
            raise ValueError("rotation_layers cannot exceed rotation_gates")
        if (self.rotation_layers == 0) != (self.rotation_gates == 0):
            raise ValueError("rotation_layers is zero exactly when rotation_gates is zero")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> LogicalCounts:
        return cls(**_exact_keys(cls, d))


@dataclass(frozen=True)
class EstimatorParams:
    physical_error_rate: float = 1e-3
    threshold: float = 1e-2
    crossing_prefactor: float = 0.03
    total_error_budget: float = 1e-3
    # nanoseconds per logical cycle per unit of code distance
    cycle_time_per_distance: float = 400.0
    synthesis_a: float = 0.53
    synthesis_b: float = 5.3
    # patch-equivalents (2d^2 qubits each) per factory, and logical cycles per T state
    factory_qubits_coeff: float = 11.0
    factory_cycles_per_output: float = 11.0
    runtime_stretch: float = 1.0

    def __post_init__(self):
        if not 0 < self.physical_error_rate < self.threshold:
            raise ValueError("need 0 < physical_error_rate < threshold")
        if not 0 < self.total_error_budget < 1:
            raise ValueError("need 0 < total_error_budget < 1")
        if self.runtime_stretch < 1:
            raise ValueError("runtime_stretch must be >= 1")
        for name in ("crossing_prefactor", "cycle_time_per_distance", "synthesis_a", "synthesis_b",
                     "factory_qubits_coeff", "factory_cycles_per_output"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> EstimatorParams:
        return cls(**{k: float(v) for k, v in _known_keys(cls, d).items()})

    def with_stretch(self, r: float) -> EstimatorParams:
        return replace(self, runtime_stretch=r)


@dataclass(frozen=True)
class PhysicalEstimate:
    code_distance: int
    logical_depth: int
    layout_qubits: int
    algorithm_physical_qubits: int
    factory_count: int
    factory_physical_qubits: int
    total_physical_qubits: int
    runtime: int  # nanoseconds
    t_states_total: int

    @property
    def runtime_seconds(self) -> float:
        return self.runtime * 1e-9

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> PhysicalEstimate:
        return cls(**{k: int(v) for k, v in _exact_keys(cls, d).items()})


def _known_keys(cls, d: dict) -> dict:
    names = {f.name for f in fields(cls)}
    unknown = set(d) - names
    if unknown:
        raise ValueError(f"unknown {cls.__name__} field(s): {sorted(unknown)}")
    return dict(d)


def _exact_keys(cls, d: dict) -> dict:
    d = _known_keys(cls, d)
    missing = {f.name for f in fields(cls) if f.default is MISSING} - set(d)
    if missing:
        raise ValueError(f"missing {cls.__name__} field(s): {sorted(missing)}")
    return d


def count_logical(c: Circuit) -> LogicalCounts:
    t = rot = meas = 0
    for g in c.gates:
        if g.kind not in TARGET_WITH_DIRECTIVES:
            raise ValueError(f"count_logical needs a target-set circuit, found {g.kind.name}")
        if g.kind in (GateKind.T, GateKind.TDG):
            t += 1
        elif g.kind in ROTATIONS:
            cls = classify_angle(g.angle)
            if cls is AngleClass.T_LIKE:
                t += 1
            elif cls is AngleClass.ARBITRARY:
                rot += 1
        elif g.kind is GateKind.MEASURE:
            meas += 1
    return LogicalCounts(
        logical_qubits=c.num_qubits,
        t_gates=t,
        rotation_gates=rot,
        rotation_layers=rotation_layers(c),
        measurements=meas,
    )


def layout_qubits(logical_qubits: int) -> int:
    q = logical_qubits
    ceil_sqrt = math.isqrt(8 * q - 1) + 1 if q > 0 else 0
    return 2 * q + ceil_sqrt + 1


def logical_error_bound(layout: int, cycles: int, params: EstimatorParams, d: int) -> float:
    ratio = params.physical_error_rate / params.threshold
    return layout * cycles * params.crossing_prefactor * ratio ** ((d + 1) // 2)


def code_distance(counts: LogicalCounts, params: EstimatorParams, cycles: int) -> int:
    """Smallest odd d >= 3 keeping the logical failure within a third of the budget."""
    if cycles < 1:
        raise ValueError("logical depth must be at least 1")
    layout = layout_qubits(counts.logical_qubits)
    budget = params.total_error_budget / 3
    for d in range(3, MAX_DISTANCE + 1, 2):
        if logical_error_bound(layout, cycles, params, d) <= budget:
            return d
    raise EstimatorInfeasible(
        f"no code distance <= {MAX_DISTANCE} reaches the error budget "
        f"(p={params.physical_error_rate}, budget={params.total_error_budget})"
    )


def t_states_per_rotation(rotation_gates: int, params: EstimatorParams) -> int:
    if rotation_gates == 0:
        return 0
    eps_syn = params.total_error_budget / 3
    return math.ceil(params.synthesis_a * math.log2(rotation_gates / eps_syn) + params.synthesis_b)


def estimate_physical(counts: LogicalCounts, params: EstimatorParams | None = None) -> PhysicalEstimate:
    params = params or EstimatorParams()
    t_rot = t_states_per_rotation(counts.rotation_gates, params)
    three_qubit = counts.ccz_gates + counts.ccix_gates
    t_states = counts.t_gates + t_rot * counts.rotation_gates + 4 * three_qubit
    depth = max(
        1,
        counts.measurements + counts.rotation_gates + counts.t_gates
        + 3 * three_qubit + t_rot * counts.rotation_layers,
    )
    d = code_distance(counts, params, depth)
    patch = 2 * d * d
    layout = layout_qubits(counts.logical_qubits)
    algo = layout * patch
    r = params.runtime_stretch
    factories = 0 if t_states == 0 else math.ceil(t_states * params.factory_cycles_per_output / (depth * r))
    factory_qubits = math.ceil(factories * params.factory_qubits_coeff * patch)
    return PhysicalEstimate(
        code_distance=d,
        logical_depth=depth,
        layout_qubits=layout,
        algorithm_physical_qubits=algo,
        factory_count=factories,
        factory_physical_qubits=factory_qubits,
        total_physical_qubits=algo + factory_qubits,
        runtime=round(depth * r * params.cycle_time_per_distance * d),
        t_states_total=t_states,
    )


def frontier(counts: LogicalCounts, params: EstimatorParams | None, stretches) -> list[PhysicalEstimate]:
    """One estimate per runtime stretch factor; factories shrink as runtime grows."""
    params = params or EstimatorParams()
    stretches = list(stretches)
    if not stretches or stretches[0] != 1 or any(b < a for a, b in zip(stretches, stretches[1:])):
        raise ValueError("stretches must be sorted ascending and start at 1")
    return [estimate_physical(counts, params.with_stretch(r)) for r in stretches]


def expected_fidelity(gate_count: int, gate_fidelity: float) -> float:
    if not 0 < gate_fidelity <= 1:
        raise ValueError("gate fidelity must lie in (0, 1]")
    if gate_count < 0:
        raise ValueError("gate count must be non-negative")
    return gate_fidelity ** gate_count


def dumps(obj) -> str:
    return json.dumps(obj.to_dict(), indent=2, sort_keys=False)
