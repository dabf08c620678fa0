"""Command-line front end: synthesize, simulate, verify, and export.

Exit codes: 0 success, 1 internal failure or failed verification,
2 usage/validation error. Probabilities print with twelve decimals so
output is diff-stable.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .arith import (
    FixedPointWeight,
    ModularInt,
    SignedCode,
    fractional_readout_distribution,
    oracle_add,
    oracle_weighted_sum,
    signed_window,
)
from .ir import CircuitIR, from_json, stats, to_json
from .qasm import ExportOptions, export, import_for_test
from .qudit import qudit_add, qudit_mean, qudit_multi_add, qudit_signed_add, qudit_weighted_sum
from .sim import fourier_matrix, prepare_basis, readout, run
from .synth import ArithmeticSpec, synth

OP_NAMES = {"qft": "qft", "add": "adder", "cmul": "const_multiplier", "mul": "multiplier", "wsum": "weighted_sum"}

PEAK_TOL = 1e-9


def format_outcome(outcome: int, probability: float) -> str:
    return f"{outcome} {probability:.12f}"


def format_distribution(dist) -> str:
    return "\n".join(format_outcome(k, float(p)) for k, p in enumerate(dist.probs))


def format_stats(circuit: CircuitIR) -> str:
    s = stats(circuit)
    return (
        f"sites={circuit.layout.n_sites} gates={s.total} depth={s.depth} "
        f"fourier={s.fourier} inverse_fourier={s.inverse_fourier} "
        f"phase={s.phase} swap={s.swap} two_control={s.two_control}"
    )


def _spec(args) -> ArithmeticSpec:
    op = OP_NAMES[args.op]
    p = args.p
    if op == "weighted_sum" and p is None:
        p = 0
    return ArithmeticSpec(
        op,
        n=args.n or 0,
        exact=args.exact,
        signed=args.signed,
        constant=args.const,
        N=args.N,
        q=args.q,
        p=p,
        t=args.t,
    )


def _add_spec_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--op", choices=sorted(OP_NAMES), help="operation to synthesize")
    parser.add_argument("--n", type=int, help="operand bits (qft: register width)")
    parser.add_argument("--exact", action="store_true", help="widen the result, no wraparound")
    parser.add_argument("--signed", action="store_true", help="two's-complement operands")
    parser.add_argument("--const", type=int, help="fixed multiplicand for cmul")
    parser.add_argument("--N", type=int, help="number of weighted-sum inputs")
    parser.add_argument("--q", type=int, help="weight bits")
    parser.add_argument("--p", type=int, help="weight precision exponent")
    parser.add_argument("--t", type=int, help="result bits (default: sized to fit)")


def _load_circuit(args) -> CircuitIR:
    if args.circuit:
        text = Path(args.circuit).read_text()
        if text.lstrip().startswith(("OPENQASM", "//")):
            return import_for_test(text)
        return from_json(text)
    if not args.op:
        raise ValueError("need --circuit PATH or inline --op flags")
    return synth(_spec(args))


def _parse_assignments(text: str | None, signed: bool) -> dict[str, int]:
    out: dict[str, int] = {}
    for part in (text or "").split(","):
        part = part.strip()
        if not part:
            continue
        name, _, value = part.partition("=")
        if not name or not value:
            raise ValueError(f"bad assignment {part!r}; use name=value")
        v = int(value)
        if v < 0 and not signed:
            raise ValueError(f"negative value for {name!r} requires --signed")
        out[name.strip()] = v
    return out


def _encode_inputs(circuit: CircuitIR, values: dict[str, int], signed: bool) -> dict[str, int]:
    encoded = {}
    for name, v in values.items():
        size = circuit.layout.register(name).size
        encoded[name] = SignedCode(v, size).code if signed else v
    return encoded


def cmd_synth(args) -> int:
    spec = _spec(args)
    if spec.operation == "qft" is None:
        raise ValueError("synth needs --op")
    circuit = synth(spec)
    if args.format == "json":
        text = to_json(circuit)
    else:
        text = export(circuit, ExportOptions(dialect=args.format))
    path = Path(args.out) if args.out else Path(_default_filename(spec, args.format))
    path.write_text(text)
    print(f"{path} {format_stats(circuit)}")
    return 0


def _default_filename(spec: ArithmeticSpec, fmt: str) -> str:
    parts = [key + str(value) for key, value in spec.meta().items() if key != "result"]
    stem = "_".join(part.replace("op", "", 1) if part.startswith("op") else part for part in parts)
    return f"{stem}.{fmt}"


def cmd_simulate(args) -> int:
    circuit = _load_circuit(args)
    values = _parse_assignments(args.inputs, args.signed)
    required = {r.name for r in circuit.layout.registers if r.role != "result"}
    missing = required - set(values)
    if missing:
        raise ValueError(f"missing input values for registers: {', '.join(sorted(missing))}")
    state = prepare_basis(circuit.layout, _encode_inputs(circuit, values, args.signed))
    run(state, circuit)
    _warn_fractional(circuit, values)
    dist = readout(state, circuit.result_register)
    if args.dist:
        print(format_distribution(dist))
    else:
        outcome, prob = dist.peak()
        if args.signed:
            outcome = SignedCode.from_code(outcome, dist.outcomes).logical
        print(format_outcome(outcome, prob))
    return 0


def _warn_fractional(circuit: CircuitIR, values: dict[str, int]) -> None:
    meta = circuit.meta
    if meta.get("op") != "weighted_sum":
        return
    p = meta.get("p", 0)
    total = sum(values.get(f"a{m}", 0) * values.get(f"x{m}", 0) for m in range(1, meta.get("N", 0) + 1))
    if total % 2**p:
        print(
            f"note: 2^{p} does not divide the raw weighted sum {total}; "
            "the result register holds a spread distribution",
            file=sys.stderr,
        )


def cmd_stats(args) -> int:
    print(format_stats(_load_circuit(args)))
    return 0


def _verify_cases(args) -> tuple[ArithmeticSpec, list[dict[str, int]]]:
    spec = _spec(args)
    n = spec.n
    if spec.operation == "qft":
        cases = [{"a": x} for x in range(2**n)]
    elif spec.operation == "adder":
        cases = [{"a": a, "b": b} for a in range(2**n) for b in range(2**n)]
    elif spec.operation == "const_multiplier":
        cases = [{"x": x} for x in range(2**n)]
    elif spec.operation == "multiplier":
        cases = [{"a": a, "b": b} for a in range(2**n) for b in range(2**n)]
    else:
        N, q = spec.N, spec.q
        cases = []
        for raws in np.ndindex(*([2**q] * N)):
            for xs in np.ndindex(*([2**n] * N)):
                case = {}
                for m in range(N):
                    case[f"a{m + 1}"] = int(raws[m])
                    case[f"x{m + 1}"] = int(xs[m])
                cases.append(case)
    return spec, cases


def _expected_peak(spec: ArithmeticSpec, circuit: CircuitIR, case: dict[str, int]) -> int | None:
    """Oracle outcome for a basis-state result, or None for spread outputs."""
    if spec.operation == "adder":
        if spec.exact:
            return case["a"] + case["b"]
        return oracle_add(ModularInt(case["a"], 2**spec.n), ModularInt(case["b"], 2**spec.n)).value
    if spec.operation == "const_multiplier":
        return spec.constant * case["x"]
    if spec.operation == "multiplier":
        t = spec.t if spec.t is not None else 2 * spec.n
        return case["a"] * case["b"] % 2**t
    weights = [FixedPointWeight(case[f"a{m + 1}"], spec.q, spec.p) for m in range(spec.N)]
    values = [case[f"x{m + 1}"] for m in range(spec.N)]
    t = circuit.layout.register(circuit.result_register).sites
    outcome, is_exact = oracle_weighted_sum(values, weights, t)
    return outcome if is_exact else None


def cmd_verify(args) -> int:
    if not args.op:
        raise ValueError("verify needs --op")
    spec, cases = _verify_cases(args)
    if spec.operation == "const_multiplier" and args.const is None:
        specs = [
            ArithmeticSpec(spec.operation, spec.n, constant=b) for b in range(2**spec.n)
        ]
        cases_per_spec = cases
        total = len(specs) * len(cases)
    else:
        specs = [spec]
        cases_per_spec = cases
        total = len(cases)
    if total > args.cap:
        print(
            f"{total} cases exceed the cap of {args.cap}; rerun with --cap {total} "
            "or shrink the widths",
            file=sys.stderr,
        )
        return 2

    worst = 0.0
    passed = 0
    for sp in specs:
        circuit = synth(sp)
        for case in cases_per_spec:
            deficit = _verify_one(sp, circuit, case)
            worst = max(worst, deficit)
            if deficit <= PEAK_TOL:
                passed += 1
    label = " ".join(f"{k}={v}" for k, v in spec.meta().items())
    status = "pass" if passed == total else "FAIL"
    print(f"{label}: {passed}/{total} {status} (worst deficit {worst:.3e})")
    return 0 if passed == total else 1


def _verify_one(spec: ArithmeticSpec, circuit: CircuitIR, case: dict[str, int]) -> float:
    state = prepare_basis(circuit.layout, case)
    run(state, circuit)
    if spec.operation == "qft":
        column = fourier_matrix(2**spec.n)[:, case["a"]]
        return float(np.abs(state.amps - column).max())
    dist = readout(state, circuit.result_register)
    expected = _expected_peak(spec, circuit, case)
    if expected is not None:
        return 1.0 - float(dist.probs[expected])
    weights = [FixedPointWeight(case[f"a{m + 1}"], spec.q, spec.p) for m in range(spec.N)]
    values = [case[f"x{m + 1}"] for m in range(spec.N)]
    t = circuit.layout.register(circuit.result_register).sites
    v = sum(w.weight * x for w, x in zip(weights, values))
    kernel = fractional_readout_distribution(v, t)
    return float(np.abs(dist.probs - kernel.probs).max())


def _parse_weights(text: str) -> list[Fraction]:
    weights = []
    for part in text.split(","):
        part = part.strip()
        try:
            weights.append(Fraction(part))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad weight {part!r}; use integers or r/s rationals") from exc
    return weights


def cmd_qudit(args) -> int:
    values = [int(v) for v in args.values.split(",")]
    d = args.d
    if args.qop in ("add", "signed-add") and len(values) != 2:
        raise ValueError(f"{args.qop} takes exactly two values")
    if args.qop == "add":
        result = qudit_add(values[0], values[1], d)
        print(format_outcome(result.value, 1.0))
    elif args.qop == "signed-add":
        result = qudit_signed_add(values[0], values[1], d)
        print(format_outcome(result.logical, 1.0))
    elif args.qop == "multi-add":
        result = qudit_multi_add(values, d, ancilla=args.ancilla)
        print(format_outcome(result.value, 1.0))
    else:
        if args.qop == "mean":
            dist = qudit_mean(values, d)
        else:
            if not args.weights:
                raise ValueError("wsum needs --weights")
            dist = qudit_weighted_sum(values, _parse_weights(args.weights), d)
        if args.dist:
            print(format_distribution(dist))
        else:
            print(format_outcome(*dist.peak()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qftarith",
        description="Synthesize, simulate, verify, and export Fourier-transform arithmetic circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="synthesize a circuit and write it to a file")
    _add_spec_flags(p_synth)
    p_synth.add_argument("--format", choices=["json", "qasm2", "qasm3"], default="json")
    p_synth.add_argument("--out", help="output path (default: derived from the spec)")
    p_synth.set_defaults(func=cmd_synth)

    p_sim = sub.add_parser("simulate", help="run a circuit on basis inputs and read out the result")
    _add_spec_flags(p_sim)
    p_sim.add_argument("--circuit", help="circuit file (JSON or OpenQASM)")
    p_sim.add_argument("--in", dest="inputs", help='input values, e.g. "a=3,b=5"')
    p_sim.add_argument("--dist", action="store_true", help="print the full distribution")
    p_sim.add_argument("--peak", action="store_true", help="print the peak outcome (default)")
    p_sim.set_defaults(func=cmd_simulate)

    p_verify = sub.add_parser("verify", help="exhaustively compare a circuit against its oracle")
    _add_spec_flags(p_verify)
    p_verify.add_argument("--cap", type=int, default=4096, help="maximum number of cases")
    p_verify.set_defaults(func=cmd_verify)

    p_stats = sub.add_parser("stats", help="print gate counts and depth")
    _add_spec_flags(p_stats)
    p_stats.add_argument("--circuit", help="circuit file (JSON or OpenQASM)")
    p_stats.set_defaults(func=cmd_stats)

    p_qudit = sub.add_parser("qudit", help="run a d-dimensional arithmetic pipeline")
    p_qudit.add_argument("--d", type=int, required=True, help="site dimension")
    p_qudit.add_argument(
        "--op",
        dest="qop",
        choices=["add", "multi-add", "mean", "wsum", "signed-add"],
        required=True,
    )
    p_qudit.add_argument("--values", required=True, help='comma-separated inputs, e.g. "4,4,4"')
    p_qudit.add_argument("--weights", help='comma-separated rationals, e.g. "1/2,1/2"')
    p_qudit.add_argument("--ancilla", action="store_true", help="keep inputs, sum into an extra site")
    p_qudit.add_argument("--dist", action="store_true", help="print the full distribution")
    p_qudit.set_defaults(func=cmd_qudit)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
