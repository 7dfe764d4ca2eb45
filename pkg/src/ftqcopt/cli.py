"""Command-line entry point: ``ftqcopt {estimate,optimize,compare,frontier,fidelity}``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields
from pathlib import Path

from .bench import SemanticViolation, builtin_circuit, compare, render_report
from .circuit import Circuit
from .estimator import (
    EstimatorInfeasible,
    EstimatorParams,
    count_logical,
    estimate_physical,
    expected_fidelity,
    frontier,
)
from .passes import parse_pass_list, run_pipeline
from .qasm import QasmError, emit_qasm, parse_qasm
from .synthesis import translate_to_target

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_INFEASIBLE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--params", metavar="FILE", help="EstimatorParams JSON file")
    g = p.add_argument_group("estimator parameters (override --params)")
    for f in fields(EstimatorParams):
        g.add_argument(f"--{f.name}", f"--{f.name.replace('_', '-')}", dest=f.name, type=float,
                       default=None, metavar="X", help=f"default {f.default}")


def _params(args) -> EstimatorParams:
    d: dict = {}
    if args.params:
        try:
            d = json.loads(Path(args.params).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read params file: {e}") from None
        if not isinstance(d, dict):
            raise UsageError("params file must hold a JSON object")
    for f in fields(EstimatorParams):
        v = getattr(args, f.name, None)
        if v is not None:
            d[f.name] = v
    try:
        return EstimatorParams.from_dict(d)
    except (TypeError, ValueError) as e:
        raise UsageError(f"invalid estimator parameters: {e}") from None


def load_circuit(ref: str) -> Circuit:
    if ref.startswith("builtin:"):
        try:
            return builtin_circuit(ref[len("builtin:"):])
        except (TypeError, ValueError) as e:
            raise UsageError(str(e)) from None
    path = Path(ref)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise UsageError(f"cannot read {ref}: {e}") from None
    return parse_qasm(text, name=path.stem)


def _passes(text: str):
    try:
        return parse_pass_list(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_estimate(args) -> int:
    params = _params(args)
    counts = count_logical(translate_to_target(load_circuit(args.circuit)))
    est = estimate_physical(counts, params)
    if args.json:
        print(json.dumps({"logical_counts": counts.to_dict(), "physical_estimate": est.to_dict()}, indent=2))
    else:
        for k, v in counts.to_dict().items():
            print(f"{k:28s} {v}")
        for k, v in est.to_dict().items():
            print(f"{k:28s} {v}")
        print(f"{'runtime_seconds':28s} {est.runtime_seconds:.6g}")
    return EXIT_OK


def cmd_optimize(args) -> int:
    c = load_circuit(args.circuit)
    out = emit_qasm(run_pipeline(c, _passes(args.passes)))
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_compare(args) -> int:
    params = _params(args)
    stretches = args.stretches or [1.0]
    if any(r < 1 for r in stretches):
        raise UsageError("stretches must be >= 1")
    circuits = [load_circuit(ref) for ref in args.circuits.split(",") if ref.strip()]
    pipelines = [_passes(p) for p in (args.passes or [""])]
    records = []
    for c in circuits:
        for pipeline in pipelines:
            for r in stretches:
                rec = compare(c, pipeline, params.with_stretch(r))
                if len(stretches) > 1:
                    rec = type(rec)(**{**rec.__dict__, "pass_pipeline": f"{rec.pass_pipeline}@x{r:g}"})
                records.append(rec)
    sys.stdout.write(render_report(records, args.format))
    return EXIT_OK


def cmd_frontier(args) -> int:
    params = _params(args)
    counts = count_logical(translate_to_target(load_circuit(args.circuit)))
    try:
        points = frontier(counts, params, args.stretches)
    except ValueError as e:
        if isinstance(e, EstimatorInfeasible):
            raise
        raise UsageError(str(e)) from None
    if args.json:
        print(json.dumps([{"stretch": r, **p.to_dict()} for r, p in zip(args.stretches, points)], indent=2))
        return EXIT_OK
    print("| stretch | d | factories | physical qubits | runtime (s) |")
    print("|---:|---:|---:|---:|---:|")
    for r, p in zip(args.stretches, points):
        print(f"| {r:g} | {p.code_distance} | {p.factory_count} | {p.total_physical_qubits} | {p.runtime_seconds:.6g} |")
    return EXIT_OK


def cmd_fidelity(args) -> int:
    try:
        f = expected_fidelity(args.gates, args.gate_fidelity)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(f"{f:.6g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ftqcopt", description="Circuit optimization passes and FTQC resource estimates.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("estimate", help="logical counts and physical estimate for a circuit")
    p.add_argument("circuit", help="QASM file or builtin:<name>:<n>")
    p.add_argument("--json", action="store_true")
    _add_param_flags(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("optimize", help="run a pass pipeline and emit QASM")
    p.add_argument("circuit")
    p.add_argument("--passes", required=True, help="comma-separated pass names")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("compare", help="before/after report over circuits and pipelines")
    p.add_argument("--circuits", required=True, help="comma-separated files or builtin:<name>:<n>")
    p.add_argument("--passes", action="append",
                   help="comma-separated pipeline; repeat the flag to compare several pipelines")
    p.add_argument("--format", choices=["md", "markdown", "csv", "json"], default="md")
    p.add_argument("--stretches", type=_floats)
    _add_param_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("frontier", help="qubit/runtime trade-off over runtime stretch factors")
    p.add_argument("circuit")
    p.add_argument("--stretches", type=_floats, default=[1.0, 2.0, 4.0, 8.0])
    p.add_argument("--json", action="store_true")
    _add_param_flags(p)
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("fidelity", help="expected fidelity F^N of N gates")
    p.add_argument("--gates", type=int, required=True)
    p.add_argument("--gate-fidelity", type=float, required=True)
    p.set_defaults(func=cmd_fidelity)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"ftqcopt: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except QasmError as e:
        for d in e.diagnostics:
            print(f"{args.circuit if hasattr(args, 'circuit') else 'input'}:{d}", file=sys.stderr)
        return EXIT_PARSE
    except SemanticViolation as e:
        print(f"ftqcopt: semantic violation: {e}", file=sys.stderr)
        return EXIT_SEMANTIC
    except EstimatorInfeasible as e:
        print(f"ftqcopt: infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
