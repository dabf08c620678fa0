"""Gate-level intermediate representation shared by synthesis, simulation,
and export.

A circuit is an ordered gate list over a register layout. Four gate kinds
cover every construction in this package:

* ``fourier`` / ``inverse_fourier`` — the single-site Fourier change of
  basis (Hadamard on a two-level site).
* ``phase`` — diagonal rotation by ``sign * 2pi / 2**l`` on the target's
  |1> component, gated on 0, 1, or 2 control sites being |1>.
* ``swap`` — exchange of two equal-dimension sites; the companion site is
  carried in the control slot since the wire format has no second target.

Circuits serialize to a JSON document with fixed field order:
``{"layout": [{"name", "role", "sites", "dim"}...],
   "gates": [{"kind", "l", "sign", "controls", "target"}...],
   "meta": {...}}``
with integer-only numeric fields. ``meta`` carries the arithmetic spec
that produced the circuit and the name of its result register.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = [
    "FOURIER",
    "INVERSE_FOURIER",
    "PHASE",
    "SWAP",
    "ROLES",
    "Register",
    "RegisterLayout",
    "Gate",
    "CircuitIR",
    "GateStats",
    "append",
    "compose",
    "inverse",
    "stats",
    "to_json",
    "from_json",
]

FOURIER = "fourier"
INVERSE_FOURIER = "inverse_fourier"
PHASE = "phase"
SWAP = "swap"
_KINDS = (FOURIER, INVERSE_FOURIER, PHASE, SWAP)

ROLES = ("operand", "value", "weight", "result")


@dataclass(frozen=True)
class Register:
    name: str
    role: str
    sites: int
    dim: int

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        if self.sites < 1:
            raise ValueError(f"register {self.name!r} needs at least one site")
        if self.dim < 2:
            raise ValueError(f"register {self.name!r} needs dim >= 2")

    @property
    def size(self) -> int:
        """Number of distinct values the register can hold."""
        return self.dim**self.sites


class RegisterLayout:
    """Ordered named registers; site indices are global and contiguous."""

    def __init__(self, registers: list[Register]):
        if not registers:
            raise ValueError("layout needs at least one register")
        names = [r.name for r in registers]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate register names in {names}")
        self.registers = tuple(registers)
        offsets = {}
        dims: list[int] = []
        for reg in registers:
            offsets[reg.name] = len(dims)
            dims.extend([reg.dim] * reg.sites)
        self._offsets = offsets
        self.dims = tuple(dims)

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    @property
    def n_amplitudes(self) -> int:
        total = 1
        for d in self.dims:
            total *= d
        return total

    def register(self, name: str) -> Register:
        for reg in self.registers:
            if reg.name == name:
                return reg
        raise KeyError(f"no register named {name!r}")

    def site_range(self, name: str) -> range:
        """Global site indices of a register, most significant first."""
        reg = self.register(name)
        start = self._offsets[name]
        return range(start, start + reg.sites)

    def __eq__(self, other) -> bool:
        return isinstance(other, RegisterLayout) and self.registers == other.registers

    def __hash__(self):
        return hash(self.registers)

    def __repr__(self):
        inner = ", ".join(f"{r.name}[{r.sites}]d{r.dim}" for r in self.registers)
        return f"RegisterLayout({inner})"


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    controls: tuple[int, ...] = ()
    l: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if len(self.controls) > 2:
            raise ValueError("at most 2 control sites")
        if len(set(self.controls)) != len(self.controls) or self.target in self.controls:
            raise ValueError("controls and target must be distinct sites")
        if self.kind == PHASE:
            if self.l < 1:
                raise ValueError(f"phase rotation needs l >= 1, got {self.l}")
        elif self.kind == SWAP:
            if len(self.controls) != 1:
                raise ValueError("swap carries its companion site in the control slot")
        elif self.controls or self.l:
            raise ValueError(f"{self.kind} gate takes no controls and no l")

    @property
    def sites(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    def inverse(self) -> "Gate":
        if self.kind == FOURIER:
            return Gate(INVERSE_FOURIER, self.target)
        if self.kind == INVERSE_FOURIER:
            return Gate(FOURIER, self.target)
        if self.kind == PHASE:
            return Gate(PHASE, self.target, self.controls, self.l, -self.sign)
        return self  # swap is self-inverse


def _check_gate(layout: RegisterLayout, gate: Gate) -> None:
    for s in gate.sites:
        if not 0 <= s < layout.n_sites:
            raise ValueError(f"site {s} outside layout with {layout.n_sites} sites")
    if gate.kind == SWAP and layout.dims[gate.target] != layout.dims[gate.controls[0]]:
        raise ValueError("swap requires equal site dimensions")


@dataclass(frozen=True)
class CircuitIR:
    layout: RegisterLayout
    gates: tuple[Gate, ...] = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for gate in self.gates:
            _check_gate(self.layout, gate)

    @property
    def result_register(self) -> str:
        """Register read out by default: meta override or the last register."""
        return self.meta.get("result", self.layout.registers[-1].name)

    def __len__(self) -> int:
        return len(self.gates)


def append(circuit: CircuitIR, gate: Gate) -> CircuitIR:
    _check_gate(circuit.layout, gate)
    return CircuitIR(circuit.layout, circuit.gates + (gate,), dict(circuit.meta))


def compose(c1: CircuitIR, c2: CircuitIR) -> CircuitIR:
    if c1.layout != c2.layout:
        raise ValueError("cannot compose circuits over different layouts")
    return CircuitIR(c1.layout, c1.gates + c2.gates, dict(c1.meta))


def inverse(circuit: CircuitIR) -> CircuitIR:
    gates = tuple(g.inverse() for g in reversed(circuit.gates))
    return CircuitIR(circuit.layout, gates, dict(circuit.meta))


@dataclass(frozen=True)
class GateStats:
    fourier: int
    inverse_fourier: int
    phase: int
    swap: int
    two_control: int
    depth: int

    @property
    def total(self) -> int:
        return self.fourier + self.inverse_fourier + self.phase + self.swap


def stats(circuit: CircuitIR) -> GateStats:
    """Counts per gate kind plus depth; gates on disjoint sites share a layer."""
    counts = {k: 0 for k in _KINDS}
    two_control = 0
    frontier = [0] * circuit.layout.n_sites  # deepest layer touching each site
    depth = 0
    for gate in circuit.gates:
        counts[gate.kind] += 1
        if gate.kind == PHASE and len(gate.controls) == 2:
            two_control += 1
        layer = 1 + max(frontier[s] for s in gate.sites)
        for s in gate.sites:
            frontier[s] = layer
        depth = max(depth, layer)
    return GateStats(
        fourier=counts[FOURIER],
        inverse_fourier=counts[INVERSE_FOURIER],
        phase=counts[PHASE],
        swap=counts[SWAP],
        two_control=two_control,
        depth=depth,
    )


def to_json(circuit: CircuitIR) -> str:
    doc = {
        "layout": [
            {"name": r.name, "role": r.role, "sites": r.sites, "dim": r.dim}
            for r in circuit.layout.registers
        ],
        "gates": [
            {
                "kind": g.kind,
                "l": g.l,
                "sign": g.sign,
                "controls": list(g.controls),
                "target": g.target,
            }
            for g in circuit.gates
        ],
        "meta": {k: circuit.meta[k] for k in sorted(circuit.meta)},
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def from_json(text: str) -> CircuitIR:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not a circuit document: {exc}") from exc
    try:
        layout = RegisterLayout(
            [Register(r["name"], r["role"], r["sites"], r["dim"]) for r in doc["layout"]]
        )
        gates = tuple(
            Gate(g["kind"], g["target"], tuple(g["controls"]), g["l"], g["sign"])
            for g in doc["gates"]
        )
        meta = doc.get("meta", {})
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed circuit document: missing {exc}") from exc
    return CircuitIR(layout, gates, meta)
