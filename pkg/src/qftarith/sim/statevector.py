"""Exact dense state-vector execution of circuits over mixed-radix sites.

The state is a complex128 vector of length prod(dims) with site 0 as the
most significant position, so a basis assignment maps to the flat index
sum(digit_s * prod(dims[s+1:])). Gate application mutates the vector in
place; a state is owned by one run at a time.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from ..arith import OutcomeDistribution
from ..ir import FOURIER, INVERSE_FOURIER, PHASE, SWAP, CircuitIR, Gate, RegisterLayout
from ._dispatch import backend_name, kernels

__all__ = [
    "AMPLITUDE_CAP",
    "StateVector",
    "fourier_matrix",
    "prepare_basis",
    "random_state",
    "apply",
    "run",
    "apply_site_unitary",
    "apply_phase_table",
    "readout",
    "peak",
    "backend_name",
]

AMPLITUDE_CAP = 2**24

_NORM_TOL = 1e-9


@lru_cache(maxsize=None)
def fourier_matrix(d: int, inverse: bool = False) -> np.ndarray:
    """d x d Fourier matrix, entries omega^(x k) / sqrt(d).

    Phase exponents are reduced mod d exactly, so entries stay on the
    unit circle to machine precision for any d.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    sign = -1 if inverse else 1
    roots = np.exp(sign * 2j * np.pi * np.arange(d) / d)
    exponents = (np.outer(np.arange(d), np.arange(d))) % d
    mat = roots[exponents] / math.sqrt(d)
    mat.setflags(write=False)
    return mat


class StateVector:
    """Unit-norm amplitudes over the layout's mixed-radix product space."""

    __slots__ = ("layout", "amps", "_dims")

    def __init__(self, layout: RegisterLayout, amps: np.ndarray):
        if layout.n_amplitudes > AMPLITUDE_CAP:
            raise ValueError(
                f"state of {layout.n_amplitudes} amplitudes exceeds the cap of {AMPLITUDE_CAP}"
            )
        amps = np.ascontiguousarray(amps, dtype=np.complex128)
        if amps.shape != (layout.n_amplitudes,):
            raise ValueError(f"expected {layout.n_amplitudes} amplitudes, got {amps.shape}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state must be unit norm, got {norm}")
        self.layout = layout
        self.amps = amps
        self._dims = np.asarray(layout.dims, dtype=np.int64)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> "StateVector":
        return StateVector(self.layout, self.amps.copy())


def prepare_basis(layout: RegisterLayout, assignments: dict[str, int] | None = None) -> StateVector:
    """Point-mass state at the given register values; omitted registers are 0."""
    assignments = dict(assignments or {})
    for name in assignments:
        layout.register(name)  # raises on unknown names
    index = 0
    for reg in layout.registers:
        value = assignments.get(reg.name, 0)
        if not 0 <= value < reg.size:
            raise ValueError(f"value {value} out of range [0, {reg.size}) for register {reg.name!r}")
        for _ in range(reg.sites):
            index *= reg.dim
        index += value
    amps = np.zeros(layout.n_amplitudes, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(layout, amps)


def random_state(layout: RegisterLayout, seed: int = 0) -> StateVector:
    """Haar-ish random unit vector (normalized complex gaussian)."""
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(layout.n_amplitudes) + 1j * rng.standard_normal(layout.n_amplitudes)
    return StateVector(layout, amps / np.linalg.norm(amps))


@lru_cache(maxsize=None)
def _phase_factor(l: int, sign: int) -> complex:
    # e^(+-i 2pi / 2^l); 2.0**-l is exact down to the underflow threshold
    return cmath.exp(sign * 2j * cmath.pi * 2.0**-l)


def apply(state: StateVector, gate: Gate) -> StateVector:
    """Apply one IR gate in place and return the state."""
    dims = state._dims
    if gate.kind == FOURIER:
        kernels.apply_site_matrix(state.amps, dims, gate.target, fourier_matrix(int(dims[gate.target])))
    elif gate.kind == INVERSE_FOURIER:
        kernels.apply_site_matrix(
            state.amps, dims, gate.target, fourier_matrix(int(dims[gate.target]), inverse=True)
        )
    elif gate.kind == PHASE:
        kernels.apply_phase_on_ones(state.amps, dims, gate.sites, _phase_factor(gate.l, gate.sign))
    elif gate.kind == SWAP:
        kernels.apply_swap(state.amps, dims, gate.controls[0], gate.target)
    else:
        raise ValueError(f"unknown gate kind {gate.kind!r}")
    return state


def run(state: StateVector, circuit: CircuitIR) -> StateVector:
    """Apply every gate of the circuit in order, in place."""
    if state.layout != circuit.layout:
        raise ValueError("state and circuit layouts differ")
    for gate in circuit.gates:
        apply(state, gate)
    return state


def apply_site_unitary(state: StateVector, site: int, matrix: np.ndarray) -> StateVector:
    """Apply a dense d x d unitary on one site in place."""
    d = int(state._dims[site])
    matrix = np.ascontiguousarray(matrix, dtype=np.complex128)
    if matrix.shape != (d, d):
        raise ValueError(f"matrix shape {matrix.shape} does not match site dimension {d}")
    kernels.apply_site_matrix(state.amps, state._dims, site, matrix)
    return state


def apply_phase_table(state: StateVector, site_a: int, site_b: int, table: np.ndarray) -> StateVector:
    """Apply a two-site diagonal gate given its (dim_a x dim_b) phase table, in place."""
    da, db = int(state._dims[site_a]), int(state._dims[site_b])
    table = np.ascontiguousarray(table, dtype=np.complex128)
    if table.shape != (da, db):
        raise ValueError(f"table shape {table.shape} does not match site dims ({da}, {db})")
    kernels.apply_two_site_phase_table(state.amps, state._dims, site_a, site_b, table)
    return state


def readout(state: StateVector, register: str) -> OutcomeDistribution:
    """Marginal outcome distribution of one register."""
    reg = state.layout.register(register)
    sites = state.layout.site_range(register)
    probs = np.abs(state.amps.reshape(state.layout.dims)) ** 2
    other_axes = tuple(s for s in range(state.layout.n_sites) if s not in sites)
    if other_axes:
        probs = probs.sum(axis=other_axes)
    return OutcomeDistribution(reg.name, probs.reshape(reg.size))


def peak(distribution: OutcomeDistribution) -> tuple[int, float]:
    """Most likely outcome and its probability; ties go to the smaller outcome."""
    return distribution.peak()
