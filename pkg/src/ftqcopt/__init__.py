"""Circuit optimization passes and fault-tolerant resource estimation."""
from .angles import Angle, AngleClass, classify_angle
from .bench import (
    ComparisonRecord,
    FindingTag,
    SemanticViolation,
    benchmark_suite,
    builtin_circuit,
    classify_finding,
    compare,
    render_report,
)
from .circuit import Circuit, Gate, GateKind, rotation_layers, to_dag
from .estimator import (
    EstimatorInfeasible,
    EstimatorParams,
    LogicalCounts,
    PhysicalEstimate,
    code_distance,
    count_logical,
    estimate_physical,
    expected_fidelity,
    frontier,
)
from .passes import PassId, run_pipeline
from .qasm import ParseDiagnostic, QasmError, emit_qasm, parse_qasm
from .sim import available_backends, equivalent_up_to_global_phase, set_backend, simulate, unitary
from .synthesis import translate_to_target

__version__ = "0.1.0"
