"""OpenQASM 2.0 / 3.0 emission for two-level circuits, plus an importer
for the emitted subset so round trips can be checked in tests.

Angles are printed as exact rational multiples of pi (pi, pi/2, pi/4,
...), never as decimal floats, so exports are byte-identical across
runs and no precision is lost for deep rotations.

Dialect mapping:

* qasm3 — ``h`` / ``inv @ h`` for the Fourier pair, ``p`` with ``ctrl @``
  modifiers for phase rotations, ``swap``. One IR gate per line.
* qasm2 — ``h``, ``u1``/``cu1`` for 0/1-control rotations; a two-control
  rotation of angle theta becomes the five-gate sequence cu1(theta/2)
  on (c1,t), cx (c1,c2), cu1(-theta/2) on (c2,t), cx (c1,c2),
  cu1(theta/2) on (c2,t); swaps become three cx (the baseline qelib1
  has no swap).

The importer maps qasm2 ``cx`` onto H . CZ . H so the decomposition is
exercised as emitted while the IR keeps its four gate kinds.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .ir import FOURIER, INVERSE_FOURIER, PHASE, SWAP, CircuitIR, Gate, Register, RegisterLayout

__all__ = ["ExportOptions", "QasmImportError", "export", "import_for_test"]


@dataclass(frozen=True)
class ExportOptions:
    dialect: str = "qasm3"
    include_swaps: bool = True
    header: str | None = None

    def __post_init__(self):
        if self.dialect not in ("qasm2", "qasm3"):
            raise ValueError(f"unsupported dialect {self.dialect!r}")


class QasmImportError(ValueError):
    """Unrecognized construct in imported text; carries the line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _angle(sign: int, denominator_power: int) -> str:
    prefix = "-" if sign < 0 else ""
    if denominator_power <= 0:
        return f"{prefix}pi"
    return f"{prefix}pi/{2**denominator_power}"


def _site_names(layout: RegisterLayout) -> list[str]:
    names = []
    for reg in layout.registers:
        names.extend(f"{reg.name}[{k}]" for k in range(reg.sites))
    return names


def _swap_permutation(circuit: CircuitIR) -> list[int]:
    """Net site permutation produced by the circuit's swap gates alone."""
    perm = list(range(circuit.layout.n_sites))
    for gate in circuit.gates:
        if gate.kind == SWAP:
            a, b = gate.controls[0], gate.target
            perm[a], perm[b] = perm[b], perm[a]
    return perm


def export(circuit: CircuitIR, options: ExportOptions = ExportOptions()) -> str:
    """Serialize a qubit circuit to OpenQASM text (one gate per line)."""
    if any(d != 2 for d in circuit.layout.dims):
        raise ValueError("only two-level layouts export to OpenQASM")
    meta = dict(circuit.meta)
    meta.setdefault("result", circuit.result_register)
    lines = []
    if options.header:
        lines.append(f"// {options.header}")
    lines.append(f"// meta: {json.dumps(meta, sort_keys=True, separators=(',', ':'))}")
    lines.append(
        "// layout: "
        + " ".join(f"{r.name}:{r.role}:{r.sites}:{r.dim}" for r in circuit.layout.registers)
    )
    lines.append("// site order: bit 1 (most significant) = index 0 of each register")
    if not options.include_swaps:
        perm = _swap_permutation(circuit)
        if perm != sorted(perm):
            lines.append(
                "// swaps omitted; emitted gates leave sites permuted as "
                + " ".join(f"{i}->{p}" for i, p in enumerate(perm) if i != p)
            )
    qubits = _site_names(circuit.layout)

    if options.dialect == "qasm3":
        lines.append("OPENQASM 3.0;")
        lines.append('include "stdgates.inc";')
        lines.extend(f"qubit[{r.sites}] {r.name};" for r in circuit.layout.registers)
        for gate in circuit.gates:
            lines.extend(_emit_qasm3(gate, qubits, options))
    else:
        lines.append("OPENQASM 2.0;")
        lines.append('include "qelib1.inc";')
        lines.extend(f"qreg {r.name}[{r.sites}];" for r in circuit.layout.registers)
        for gate in circuit.gates:
            lines.extend(_emit_qasm2(gate, qubits, options))
    return "\n".join(lines) + "\n"


def _emit_qasm3(gate: Gate, qubits: list[str], options: ExportOptions) -> list[str]:
    t = qubits[gate.target]
    if gate.kind == FOURIER:
        return [f"h {t};"]
    if gate.kind == INVERSE_FOURIER:
        return [f"inv @ h {t};"]
    if gate.kind == SWAP:
        if not options.include_swaps:
            return []
        return [f"swap {qubits[gate.controls[0]]}, {t};"]
    angle = _angle(gate.sign, gate.l - 1)
    mods = "ctrl @ " * len(gate.controls)
    operands = ", ".join([qubits[c] for c in gate.controls] + [t])
    return [f"{mods}p({angle}) {operands};"]


def _emit_qasm2(gate: Gate, qubits: list[str], options: ExportOptions) -> list[str]:
    t = qubits[gate.target]
    if gate.kind in (FOURIER, INVERSE_FOURIER):
        return [f"h {t};"]
    if gate.kind == SWAP:
        if not options.include_swaps:
            return []
        a = qubits[gate.controls[0]]
        return [f"cx {a},{t};", f"cx {t},{a};", f"cx {a},{t};"]
    if not gate.controls:
        return [f"u1({_angle(gate.sign, gate.l - 1)}) {t};"]
    if len(gate.controls) == 1:
        c = qubits[gate.controls[0]]
        return [f"cu1({_angle(gate.sign, gate.l - 1)}) {c},{t};"]
    c1, c2 = (qubits[c] for c in gate.controls)
    half = _angle(gate.sign, gate.l)
    anti = _angle(-gate.sign, gate.l)
    return [
        f"cu1({half}) {c1},{t};",
        f"cx {c1},{c2};",
        f"cu1({anti}) {c2},{t};",
        f"cx {c1},{c2};",
        f"cu1({half}) {c2},{t};",
    ]


_ANGLE_RE = re.compile(r"^(-?)pi(?:/(\d+))?$")
_DECL3_RE = re.compile(r"^qubit\[(\d+)\]\s+(\w+)$")
_DECL2_RE = re.compile(r"^qreg\s+(\w+)\[(\d+)\]$")
_SITE_RE = re.compile(r"^(\w+)\[(\d+)\]$")


def _parse_angle(text: str, line: int) -> tuple[int, int]:
    """Angle literal -> (sign, l) with angle = sign * 2pi / 2^l."""
    match = _ANGLE_RE.match(text.strip())
    if not match:
        raise QasmImportError(f"unsupported angle literal {text!r}", line)
    sign = -1 if match.group(1) else 1
    den = int(match.group(2)) if match.group(2) else 1
    if den & (den - 1):
        raise QasmImportError(f"angle denominator {den} is not a power of two", line)
    return sign, den.bit_length()  # pi/2^k = 2pi/2^(k+1), and 2^k.bit_length() = k+1


class _Importer:
    def __init__(self):
        self.registers: list[Register] = []
        self.roles: dict[str, str] = {}
        self.meta: dict = {}
        self.site_of: dict[str, int] = {}
        self.gates: list[Gate] = []

    def comment(self, body: str, line: int) -> None:
        if body.startswith("meta:"):
            try:
                self.meta = json.loads(body[len("meta:") :])
            except json.JSONDecodeError as exc:
                raise QasmImportError(f"bad meta comment: {exc}", line) from exc
        elif body.startswith("layout:"):
            for part in body[len("layout:") :].split():
                name, role, _sites, _dim = part.split(":")
                self.roles[name] = role

    def declare(self, name: str, sites: int, line: int) -> None:
        if any(r.name == name for r in self.registers):
            raise QasmImportError(f"register {name!r} declared twice", line)
        base = sum(r.sites for r in self.registers)
        self.registers.append(Register(name, self.roles.get(name, "operand"), sites, 2))
        for k in range(sites):
            self.site_of[f"{name}[{k}]"] = base + k

    def site(self, token: str, line: int) -> int:
        token = token.strip()
        if token not in self.site_of:
            raise QasmImportError(f"unknown qubit {token!r}", line)
        return self.site_of[token]

    def circuit(self) -> CircuitIR:
        return CircuitIR(RegisterLayout(self.registers), tuple(self.gates), self.meta)


def import_for_test(text: str) -> CircuitIR:
    """Parse text produced by `export` back into a circuit.

    Only the emitted subset is recognized; anything else raises
    `QasmImportError` with the offending line number. qasm2 ``cx`` comes
    back as H . controlled-phase(l=1) . H on the target.
    """
    imp = _Importer()
    saw_version = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.strip()
        if not stmt:
            continue
        if stmt.startswith("//"):
            imp.comment(stmt[2:].strip(), lineno)
            continue
        if not stmt.endswith(";"):
            raise QasmImportError(f"statement missing ';': {stmt!r}", lineno)
        stmt = stmt[:-1].strip()
        if stmt.startswith("OPENQASM"):
            if stmt not in ("OPENQASM 2.0", "OPENQASM 3.0"):
                raise QasmImportError(f"unsupported version {stmt!r}", lineno)
            saw_version = True
            continue
        if stmt.startswith("include"):
            continue
        if not saw_version:
            raise QasmImportError("statement before OPENQASM version line", lineno)
        decl = _DECL3_RE.match(stmt) or None
        if decl:
            imp.declare(decl.group(2), int(decl.group(1)), lineno)
            continue
        decl = _DECL2_RE.match(stmt)
        if decl:
            imp.declare(decl.group(1), int(decl.group(2)), lineno)
            continue
        _parse_gate(imp, stmt, lineno)
    if not imp.registers:
        raise QasmImportError("no register declarations found", len(text.splitlines()))
    return imp.circuit()


def _parse_gate(imp: _Importer, stmt: str, line: int) -> None:
    inverse = False
    n_ctrl = 0
    while "@" in stmt:
        mod, stmt = (s.strip() for s in stmt.split("@", 1))
        if mod == "inv":
            inverse = True
        elif mod == "ctrl":
            n_ctrl += 1
        else:
            raise QasmImportError(f"unsupported modifier {mod!r}", line)
    match = re.match(r"^(\w+)(?:\(([^)]*)\))?\s+(.*)$", stmt)
    if not match:
        raise QasmImportError(f"unrecognized statement {stmt!r}", line)
    name, arg, tail = match.group(1), match.group(2), match.group(3)
    sites = [imp.site(tok, line) for tok in tail.split(",")]

    if name == "h" and len(sites) == 1 and arg is None:
        imp.gates.append(Gate(INVERSE_FOURIER if inverse else FOURIER, sites[0]))
        return
    if inverse:
        raise QasmImportError(f"inv @ not supported on {name!r}", line)
    if name == "swap" and len(sites) == 2 and arg is None:
        imp.gates.append(Gate(SWAP, sites[1], (sites[0],)))
        return
    if name == "cx" and len(sites) == 2 and arg is None:
        control, target = sites
        imp.gates.append(Gate(FOURIER, target))
        imp.gates.append(Gate(PHASE, target, (control,), l=1))
        imp.gates.append(Gate(FOURIER, target))
        return
    if name in ("p", "u1", "cu1") and arg is not None:
        sign, l = _parse_angle(arg, line)
        expected = n_ctrl + 1 if name == "p" else (2 if name == "cu1" else 1)
        if len(sites) != expected:
            raise QasmImportError(f"{name} expects {expected} operands, got {len(sites)}", line)
        imp.gates.append(Gate(PHASE, sites[-1], tuple(sites[:-1]), l=l, sign=sign))
        return
    raise QasmImportError(f"unrecognized gate {name!r}", line)
