"""OpenQASM 2.0 subset reader and writer.

Supported: the header, ``include`` (ignored), ``qreg``/``creg`` declarations
(several qregs are flattened in declaration order), the gates listed in
``MNEMONICS``, ``measure`` and ``barrier``, with register broadcasting. Angle
arguments accept numbers, ``pi``, ``+ - * /`` and parentheses; rational
multiples of pi are kept exact.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .angles import Angle
from .circuit import Circuit, Gate, GateKind

K = GateKind

MNEMONICS: dict[str, GateKind] = {
    "x": K.X, "y": K.Y, "z": K.Z, "h": K.H, "s": K.S, "sdg": K.SDG, "t": K.T, "tdg": K.TDG,
    "sx": K.SX, "rx": K.RX, "ry": K.RY, "rz": K.RZ, "cx": K.CNOT, "CX": K.CNOT, "ch": K.CH,
    "ccx": K.CCX, "ccz": K.CCZ, "swap": K.SWAP, "u3": K.U3, "u": K.U3, "U": K.U3,
}
_MAX_EXPR_DEPTH = 100
_MAX_EXPONENT = 300


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    severity: Severity = Severity.ERROR

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity.value}: {self.message}"


class QasmError(ValueError):
    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+|\n)
  | (?P<comment>//[^\n]*)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<arrow>->)
  | (?P<eq>==)
  | (?P<sym>[;,\[\](){}+\-*/^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(source: str) -> tuple[list[Token], list[ParseDiagnostic]]:
    tokens, diags = [], []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            diags.append(ParseDiagnostic(line, pos - line_start + 1, f"unexpected character {source[pos]!r}"))
            pos += 1
            continue
        kind = m.lastgroup
        if kind == "ws" and m.group() == "\n":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens, diags


class _Fail(Exception):
    def __init__(self, tok: Token, message: str):
        self.diag = ParseDiagnostic(tok.line, tok.column, message)


@dataclass
class _Value:
    """pi_coef * pi + const, or a plain float when exactness is lost."""

    pi_coef: Fraction = Fraction(0)
    const: Fraction = Fraction(0)
    fl: float | None = None

    def as_float(self) -> float:
        if self.fl is not None:
            return self.fl
        try:
            return float(self.pi_coef) * math.pi + float(self.const)
        except OverflowError:
            return math.inf

    def to_angle(self) -> Angle:
        if self.fl is None and self.const == 0:
            return Angle(pi_multiple=self.pi_coef)
        return Angle.from_radians(self.as_float())


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        self.qregs: dict[str, tuple[int, int]] = {}
        self.cregs: dict[str, tuple[int, int]] = {}
        self.nq = 0
        self.nc = 0
        self.gates: list[Gate] = []
        self.diags: list[ParseDiagnostic] = []

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind in ("string",):
            raise _Fail(self.tok, f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            raise _Fail(self.tok, f"expected {what}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def recover(self) -> None:
        while self.tok.kind != "eof" and self.tok.text != ";":
            self.advance()
        self.advance()

    # statements
    def parse(self) -> None:
        if self.tok.text == "OPENQASM":
            try:
                self.advance()
                v = self.expect_kind("number", "version number")
                if v.text not in ("2.0", "2"):
                    raise _Fail(v, f"only OpenQASM 2.0 is supported, got {v.text}")
                self.expect(";")
            except _Fail as e:
                self.diags.append(e.diag)
                self.recover()
        while self.tok.kind != "eof":
            try:
                self.statement()
            except _Fail as e:
                self.diags.append(e.diag)
                self.recover()

    def statement(self) -> None:
        t = self.tok
        if t.kind != "ident":
            raise _Fail(t, f"expected a statement, found {t.text!r}")
        word = t.text
        if word == "include":
            self.advance()
            s = self.expect_kind("string", "file name string")
            if s.text != '"qelib1.inc"':
                self.diags.append(ParseDiagnostic(s.line, s.column, f"include {s.text} ignored", Severity.WARNING))
            self.expect(";")
        elif word in ("qreg", "creg"):
            self.advance()
            name = self.expect_kind("ident", "register name")
            self.expect("[")
            size_tok = self.expect_kind("number", "register size")
            if not size_tok.text.isdigit() or int(size_tok.text) < 1:
                raise _Fail(size_tok, "register size must be a positive integer")
            self.expect("]")
            self.expect(";")
            size = int(size_tok.text)
            if name.text in self.qregs or name.text in self.cregs:
                raise _Fail(name, f"register {name.text!r} already declared")
            if word == "qreg":
                self.qregs[name.text] = (self.nq, size)
                self.nq += size
            else:
                self.cregs[name.text] = (self.nc, size)
                self.nc += size
        elif word in ("gate", "opaque"):
            self.diags.append(ParseDiagnostic(t.line, t.column, "custom gate definitions are not supported"))
            while self.tok.kind != "eof" and self.tok.text not in ("}", ";" if word == "opaque" else "}"):
                self.advance()
            self.advance()
        elif word in ("if", "reset"):
            raise _Fail(t, f"'{word}' is not supported")
        elif word == "measure":
            self.advance()
            src = self.argument(self.qregs, "quantum")
            self.expect_kind("arrow", "'->'")
            dst = self.argument(self.cregs, "classical")
            self.expect(";")
            if len(src) != len(dst):
                raise _Fail(t, "measure register sizes differ")
            for q, c in zip(src, dst):
                self.gates.append(Gate(K.MEASURE, (q,), cbit=c))
        elif word == "barrier":
            self.advance()
            qubits: list[int] = []
            for arg in self.argument_list():
                qubits.extend(q for q in arg if q not in qubits)
            self.expect(";")
            self.gates.append(Gate(K.BARRIER, tuple(qubits)))
        else:
            self.gate_call()

    def gate_call(self) -> None:
        t = self.advance()
        kind = MNEMONICS.get(t.text)
        if kind is None:
            raise _Fail(t, f"unknown gate {t.text!r}")
        params: list[Angle] = []
        if self.tok.text == "(":
            self.advance()
            if self.tok.text != ")":
                params.append(self.angle_arg())
                while self.tok.text == ",":
                    self.advance()
                    params.append(self.angle_arg())
            self.expect(")")
        if len(params) != kind.num_angles:
            raise _Fail(t, f"{t.text} takes {kind.num_angles} parameter(s), got {len(params)}")
        args = self.argument_list()
        semi = self.expect(";")
        if len(args) != kind.arity:
            raise _Fail(t, f"{t.text} takes {kind.arity} qubit argument(s), got {len(args)}")
        sizes = {len(a) for a in args if len(a) > 1}
        if len(sizes) > 1:
            raise _Fail(t, "broadcast registers have different sizes")
        width = sizes.pop() if sizes else 1
        for k in range(width):
            qubits = tuple(a[k] if len(a) > 1 else a[0] for a in args)
            if len(set(qubits)) != len(qubits):
                raise _Fail(semi, f"{t.text} operands must be distinct")
            self.gates.append(Gate(kind, qubits, tuple(params)))

    def angle_arg(self) -> Angle:
        start = self.tok
        v = self.expr(0)
        if v.fl is not None or v.const != 0:
            x = v.as_float()
            if not math.isfinite(x):
                raise _Fail(start, "angle expression is not a finite number")
        return v.to_angle()

    def argument_list(self) -> list[list[int]]:
        args = [self.argument(self.qregs, "quantum")]
        while self.tok.text == ",":
            self.advance()
            args.append(self.argument(self.qregs, "quantum"))
        return args

    def argument(self, regs: dict[str, tuple[int, int]], what: str) -> list[int]:
        name = self.expect_kind("ident", f"{what} register")
        if name.text not in regs:
            raise _Fail(name, f"undeclared {what} register {name.text!r}")
        offset, size = regs[name.text]
        if self.tok.text != "[":
            return list(range(offset, offset + size))
        self.advance()
        idx = self.expect_kind("number", "index")
        if not idx.text.isdigit():
            raise _Fail(idx, "register index must be an integer")
        if int(idx.text) >= size:
            raise _Fail(idx, f"index {idx.text} out of range for {name.text}[{size}]")
        self.expect("]")
        return [offset + int(idx.text)]

    # expressions: precedence climbing over + - * /
    def expr(self, depth: int) -> _Value:
        if depth > _MAX_EXPR_DEPTH:
            raise _Fail(self.tok, "expression nested too deeply")
        left = self.term(depth)
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            right = self.term(depth)
            left = _combine(left, right, op)
        return left

    def term(self, depth: int) -> _Value:
        left = self.unary(depth)
        while self.tok.text in ("*", "/"):
            op_tok = self.advance()
            right = self.unary(depth)
            if op_tok.text == "/" and right.fl is None and right.pi_coef == 0 and right.const == 0:
                raise _Fail(op_tok, "division by zero")
            if op_tok.text == "/" and right.fl is not None and right.fl == 0:
                raise _Fail(op_tok, "division by zero")
            left = _combine(left, right, op_tok.text)
        return left

    def unary(self, depth: int) -> _Value:
        if self.tok.text == "-":
            self.advance()
            v = self.unary(depth + 1)
            return _Value(-v.pi_coef, -v.const) if v.fl is None else _Value(fl=-v.fl)
        if self.tok.text == "+":
            self.advance()
            return self.unary(depth + 1)
        return self.atom(depth)

    def atom(self, depth: int) -> _Value:
        t = self.tok
        if t.kind == "number":
            self.advance()
            mantissa, _, exponent = t.text.lower().partition("e")
            if exponent and abs(int(exponent)) > _MAX_EXPONENT:
                raise _Fail(t, f"numeric literal {t.text} out of range")
            return _Value(const=Fraction(t.text))
        if t.kind == "ident" and t.text == "pi":
            self.advance()
            return _Value(pi_coef=Fraction(1))
        if t.text == "(":
            self.advance()
            v = self.expr(depth + 1)
            self.expect(")")
            return v
        raise _Fail(t, f"malformed expression at {t.text or 'end of input'!r}")


def _combine(a: _Value, b: _Value, op: str) -> _Value:
    exact = a.fl is None and b.fl is None
    if op in "+-":
        if exact:
            sign = 1 if op == "+" else -1
            return _Value(a.pi_coef + sign * b.pi_coef, a.const + sign * b.const)
        x, y = a.as_float(), b.as_float()
        return _Value(fl=x + y if op == "+" else x - y)
    if exact and op == "*" and (a.pi_coef == 0 or b.pi_coef == 0):
        s, v = (a.const, b) if a.pi_coef == 0 else (b.const, a)
        return _Value(v.pi_coef * s, v.const * s)
    if exact and op == "/" and b.pi_coef == 0:
        return _Value(a.pi_coef / b.const, a.const / b.const)
    if exact and op == "/" and a.const == 0 and b.const == 0:
        return _Value(const=a.pi_coef / b.pi_coef)
    x, y = a.as_float(), b.as_float()
    return _Value(fl=x * y if op == "*" else x / y)


def parse_qasm_with_diagnostics(source: str, name: str = "circuit") -> tuple[Circuit | None, list[ParseDiagnostic]]:
    tokens, diags = tokenize(source)
    p = _Parser(tokens)
    p.diags.extend(diags)
    p.parse()
    errors = [d for d in p.diags if d.severity is Severity.ERROR]
    if not errors and p.nq == 0:
        last = tokens[-1]
        p.diags.append(ParseDiagnostic(last.line, last.column, "no qreg declared"))
        errors = True
    if errors:
        return None, sorted(p.diags, key=lambda d: (d.line, d.column))
    return Circuit(p.nq, tuple(p.gates), name), p.diags


def parse_qasm(source: str, name: str = "circuit") -> Circuit:
    """Parse QASM text; raises :class:`QasmError` carrying positioned diagnostics."""
    circuit, diags = parse_qasm_with_diagnostics(source, name)
    if circuit is None:
        raise QasmError([d for d in diags if d.severity is Severity.ERROR])
    return circuit


def format_angle(a: Angle) -> str:
    if a.is_exact:
        return str(a)
    return format(a.radians, ".17g")


def emit_qasm(c: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.num_qubits}];"]
    cbits = [g.cbit for g in c.gates if g.kind is K.MEASURE]
    ncl = max((b for b in cbits if b is not None), default=-1) + 1
    if cbits:
        lines.append(f"creg c[{max(ncl, 1)}];")
    for g in c.gates:
        qs = ",".join(f"q[{q}]" for q in g.qubits)
        if g.kind is K.MEASURE:
            lines.append(f"measure {qs} -> c[{g.cbit or 0}];")
        elif g.angles:
            lines.append(f"{g.kind.value}({','.join(format_angle(a) for a in g.angles)}) {qs};")
        else:
            lines.append(f"{g.kind.value} {qs};")
    return "\n".join(lines) + "\n"
