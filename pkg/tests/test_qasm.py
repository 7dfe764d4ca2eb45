import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ch_native, random_ir_circuit
from ftqcopt.angles import Angle
from ftqcopt.circuit import Circuit, Gate, GateKind, rz, simple
from ftqcopt.qasm import (
    ParseDiagnostic,
    QasmError,
    Severity,
    emit_qasm,
    parse_qasm,
    parse_qasm_with_diagnostics,
)

K = GateKind
HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def _errors(src):
    c, diags = parse_qasm_with_diagnostics(src)
    assert c is None
    errs = [d for d in diags if d.severity is Severity.ERROR]
    assert errs
    return errs


def test_minimal_program():
    assert parse_qasm("qreg q[1]; h q[0];") == Circuit(1, (simple(K.H, 0),))


def test_exact_and_float_angles():
    c = parse_qasm("qreg q[2]; rz(-pi/4) q[1]; rz(0.3) q[0];")
    assert c.gates[0] == rz(Angle.exact(-1, 4), 1)
    assert c.gates[1].angle == Angle.from_radians(0.3)
    assert not c.gates[1].angle.is_exact


def test_expression_forms():
    c = parse_qasm("qreg q[1]; rz(3*pi/4) q[0]; rz(pi/2 + pi/4) q[0]; rz(-(pi)) q[0]; rz(2*(pi/8)/2) q[0]; rz(0.5*pi) q[0];")
    assert [g.angle for g in c.gates] == [
        Angle.exact(3, 4), Angle.exact(3, 4), Angle.exact(1), Angle.exact(1, 8), Angle.exact(1, 2),
    ]


def test_float_expression_snaps_to_exact():
    c = parse_qasm("qreg q[1]; rz(0.7853981633974483) q[0];")
    assert c.gates[0].angle == Angle.exact(1, 4)


def test_all_mnemonics():
    src = HEADER + "qreg q[3]; creg c[3];\n" + "\n".join([
        "x q[0];", "y q[0];", "z q[0];", "h q[0];", "s q[0];", "sdg q[0];", "t q[0];", "tdg q[0];",
        "sx q[0];", "rx(pi) q[0];", "ry(0.1) q[0];", "rz(1) q[0];", "cx q[0],q[1];", "ch q[0],q[1];",
        "ccx q[0],q[1],q[2];", "ccz q[0],q[1],q[2];", "swap q[0],q[2];", "u3(1,2,3) q[1];",
        "u(pi,0,pi) q[1];", "measure q[2] -> c[1];", "barrier q;",
    ])
    c = parse_qasm(src)
    assert [g.kind for g in c.gates] == [
        K.X, K.Y, K.Z, K.H, K.S, K.SDG, K.T, K.TDG, K.SX, K.RX, K.RY, K.RZ, K.CNOT, K.CH,
        K.CCX, K.CCZ, K.SWAP, K.U3, K.U3, K.MEASURE, K.BARRIER,
    ]
    assert c.gates[-2].cbit == 1
    assert c.gates[-1].qubits == (0, 1, 2)


def test_multiple_registers_flatten_in_order():
    c = parse_qasm("qreg a[2]; qreg b[3]; creg m[1]; creg n[2]; cx a[1],b[0]; measure b[2] -> n[1];")
    assert c.num_qubits == 5
    assert c.gates[0].qubits == (1, 2)
    assert c.gates[1].qubits == (4,) and c.gates[1].cbit == 2


def test_register_broadcast():
    c = parse_qasm("qreg a[2]; qreg b[2]; creg c[2]; h a; cx a,b; measure b -> c;")
    assert [g.qubits for g in c.gates] == [(0,), (1,), (0, 2), (1, 3), (2,), (3,)]
    c = parse_qasm("qreg a[1]; qreg b[3]; cx a[0],b;")
    assert [g.qubits for g in c.gates] == [(0, 1), (0, 2), (0, 3)]


def test_comments_and_line_endings():
    src = "OPENQASM 2.0;\r\n// comment\r\nqreg q[1];\r\nh q[0]; // trailing\r\n"
    assert parse_qasm(src) == Circuit(1, (simple(K.H, 0),))


def test_unknown_gate_is_positioned():
    errs = _errors("qreg q[2];\nfoo q[0];")
    assert (errs[0].line, errs[0].column) == (2, 1)
    assert "unknown gate" in errs[0].message


def test_arity_mismatch():
    errs = _errors("qreg q[2];\ncx q[0];")
    assert errs[0].line == 2 and "argument" in errs[0].message
    assert _errors("qreg q[2]; rz q[0];")
    assert _errors("qreg q[2]; h(0.1) q[0];")


def test_out_of_range_index():
    errs = _errors("qreg q[2];\nh q[2];")
    assert (errs[0].line, errs[0].column) == (2, 5)
    assert "out of range" in errs[0].message


def test_malformed_expressions():
    for expr in ["pi+", "(pi", "pi pi", "2**pi", "", "*3", "1/0", "sin(pi)", "1e999"]:
        assert _errors(f"qreg q[1];\nrz({expr}) q[0];")[0].line == 2, expr


def test_custom_gate_rejected():
    errs = _errors("qreg q[1]; gate g a { h a; } g q[0];")
    assert "custom gate" in errs[0].message


def test_other_rejections():
    assert _errors("OPENQASM 3.0; qreg q[1];")
    assert _errors("qreg q[0];")
    assert _errors("qreg q[1]; qreg q[1];")
    assert _errors("qreg q[1]; h r[0];")
    assert _errors("qreg q[2]; cx q[0],q[0];")
    assert _errors("qreg q[2]; creg c[1]; measure q -> c;")
    assert _errors("h q[0];")
    assert _errors("")


def test_error_means_no_circuit_and_exception_carries_diagnostics():
    with pytest.raises(QasmError) as exc:
        parse_qasm("qreg q[1]; bogus q[0]; h q[3];")
    assert len(exc.value.diagnostics) == 2
    assert all(isinstance(d, ParseDiagnostic) for d in exc.value.diagnostics)


def test_unknown_include_is_a_warning():
    c, diags = parse_qasm_with_diagnostics('include "other.inc"; qreg q[1];')
    assert c is not None
    assert [d.severity for d in diags] == [Severity.WARNING]


def test_emit_minimal():
    text = emit_qasm(Circuit(1, (simple(K.H, 0),)))
    assert text == 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nh q[0];\n'


def test_emit_angle_forms():
    text = emit_qasm(Circuit(1, (rz(Angle.exact(-1, 4), 0), rz(Angle.from_radians(0.3), 0))))
    assert "rz(-pi/4) q[0];" in text
    assert "rz(0.29999999999999999) q[0];" in text


def test_native_ch_round_trip():
    assert parse_qasm(emit_qasm(ch_native())).gates == ch_native().gates


def test_float_round_trip_is_bit_identical():
    c = parse_qasm(emit_qasm(Circuit(1, (rz(Angle.from_radians(0.3), 0),))))
    assert c.gates[0].angle.radians == Angle.from_radians(0.3).radians


def test_emit_is_deterministic():
    c = random_ir_circuit(random.Random(3), 4, 30)
    assert emit_qasm(c) == emit_qasm(c)


def test_round_trip_random_circuits():
    rng = random.Random(21)
    for _ in range(200):
        c = random_ir_circuit(rng, rng.randint(1, 6), rng.randint(0, 25))
        assert parse_qasm(emit_qasm(c)) == c


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=200))
def test_parser_is_total_on_arbitrary_text(src):
    c, diags = parse_qasm_with_diagnostics(src)
    if c is None:
        assert any(d.severity is Severity.ERROR and d.line >= 1 and d.column >= 1 for d in diags)


_ALPHABET = list("qreg[];,()+-*/.0123456789 \npi") + ["h ", "cx ", "rz(", "measure ", "->", "barrier ", "qreg ", "creg ", "gate "]


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from(_ALPHABET), max_size=60))
def test_parser_is_total_on_qasm_like_tokens(parts):
    src = "qreg q[3]; creg c[3];" + "".join(parts)
    c, diags = parse_qasm_with_diagnostics(src)
    if c is None:
        lines = src.split("\n")
        for d in diags:
            assert 1 <= d.line <= len(lines)
            assert 1 <= d.column <= len(lines[d.line - 1]) + 1


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_parser_is_total_on_mutated_programs(seed):
    rng = random.Random(seed)
    src = list(emit_qasm(random_ir_circuit(rng, 3, 8)))
    for _ in range(rng.randint(1, 5)):
        i = rng.randrange(len(src))
        op = rng.random()
        if op < 0.4:
            del src[i]
        elif op < 0.8:
            src.insert(i, rng.choice("q[]();,->pi0123456789.*/+ \n"))
        else:
            src[i] = rng.choice("abcxyz#@!")
    parse_qasm_with_diagnostics("".join(src))
