"""Arithmetic pipelines on d-dimensional sites, built from full Fourier
unitaries and controlled phase gates rather than any two-level gate
decomposition.

Each pipeline follows the same shape: Fourier-transform the sum site,
let every input site imprint its contribution as a controlled phase,
then invert the transform. Controlled phases carry an optional factor F
in the divisor, CZ^F |x>|y> = exp(2i pi x y / (F d_target)) |x>|y>,
which realizes means (F = N), rational weights (F = 1/a), and sums into
a larger register (different d_target).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import ModularInt, OutcomeDistribution, SignedCode, dimension_for_exact_sum, signed_window
from .ir import Register, RegisterLayout
from .sim import StateVector, apply_phase_table, apply_site_unitary, fourier_matrix, prepare_basis, readout

__all__ = [
    "SITE_DIM_CAP",
    "QuditGate",
    "qft_matrix",
    "iqft_matrix",
    "controlled_phase_table",
    "apply_qudit_gate",
    "adder_gates",
    "adder_pipeline_unitary",
    "qudit_add",
    "qudit_multi_add",
    "qudit_exact_add",
    "qudit_mean",
    "qudit_weighted_sum",
    "qudit_signed_add",
]

SITE_DIM_CAP = 256
AMPLITUDE_CAP = 2**22
_POINT_MASS_TOL = 1e-9


def qft_matrix(d: int) -> np.ndarray:
    """Fourier unitary on a d-level site: entries omega^(x k) / sqrt(d)."""
    return fourier_matrix(_checked_dim(d))


def iqft_matrix(d: int) -> np.ndarray:
    """Inverse Fourier unitary: conjugate transpose of qft_matrix(d)."""
    return fourier_matrix(_checked_dim(d), inverse=True)


def _checked_dim(d: int) -> int:
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if d > SITE_DIM_CAP:
        raise ValueError(f"site dimension {d} exceeds the dense cap of {SITE_DIM_CAP}")
    return d


def controlled_phase_table(d_control: int, d_target: int, factor: Fraction | int = 1) -> np.ndarray:
    """Phase table of CZ^F between sites of dimensions (d_control, d_target).

    Entry (x, y) is exp(2i pi x y / (F d_target)). The exponent is
    reduced mod 1 as an exact rational before the single float
    conversion, so no error accumulates across gates.
    """
    _checked_dim(d_control)
    _checked_dim(d_target)
    factor = Fraction(factor)
    if factor <= 0:
        raise ValueError(f"phase factor must be positive, got {factor}")
    table = np.empty((d_control, d_target), dtype=np.complex128)
    for x in range(d_control):
        for y in range(d_target):
            turns = Fraction(x * y, 1) / (factor * d_target)
            table[x, y] = np.exp(2j * np.pi * float(turns % 1))
    return table


@dataclass(frozen=True)
class QuditGate:
    """One pipeline step: kind in {"fourier", "inverse_fourier",
    "controlled_phase"}; sites are (target,) or (control, target)."""

    kind: str
    sites: tuple[int, ...]
    factor: Fraction = Fraction(1)

    def matrix(self, dims: tuple[int, ...]) -> np.ndarray:
        """Dense matrix over the gate's own sites (for unitarity checks)."""
        if self.kind == "fourier":
            return qft_matrix(dims[self.sites[0]])
        if self.kind == "inverse_fourier":
            return iqft_matrix(dims[self.sites[0]])
        control, target = self.sites
        return np.diag(
            controlled_phase_table(dims[control], dims[target], self.factor).reshape(-1)
        )


def apply_qudit_gate(state: StateVector, gate: QuditGate) -> StateVector:
    dims = state.layout.dims
    if gate.kind == "fourier":
        return apply_site_unitary(state, gate.sites[0], qft_matrix(dims[gate.sites[0]]))
    if gate.kind == "inverse_fourier":
        return apply_site_unitary(state, gate.sites[0], iqft_matrix(dims[gate.sites[0]]))
    if gate.kind == "controlled_phase":
        control, target = gate.sites
        table = controlled_phase_table(dims[control], dims[target], gate.factor)
        return apply_phase_table(state, control, target, table)
    raise ValueError(f"unknown qudit gate kind {gate.kind!r}")


def _one_site_layout(names_dims: list[tuple[str, str, int]]) -> RegisterLayout:
    layout = RegisterLayout([Register(name, role, 1, dim) for name, role, dim in names_dims])
    if layout.n_amplitudes > AMPLITUDE_CAP:
        raise ValueError(
            f"request needs {layout.n_amplitudes} amplitudes, above the cap of {AMPLITUDE_CAP}"
        )
    return layout


def _sum_pipeline(n_inputs: int, target: int, factors: list[Fraction]) -> list[QuditGate]:
    gates = [QuditGate("fourier", (target,))]
    gates += [
        QuditGate("controlled_phase", (m, target), factors[m]) for m in range(n_inputs)
    ]
    gates.append(QuditGate("inverse_fourier", (target,)))
    return gates


def _check_values(values: list[int], d: int) -> None:
    _checked_dim(d)
    if not values:
        raise ValueError("need at least one input value")
    for v in values:
        if not 0 <= v < d:
            raise ValueError(f"value {v} out of range [0, {d})")


def _expect_point_mass(dist: OutcomeDistribution, context: str) -> int:
    value, prob = dist.peak()
    if prob < 1 - _POINT_MASS_TOL:
        raise AssertionError(f"{context}: expected a basis state, peak probability {prob}")
    return value


def adder_gates(d: int) -> list[QuditGate]:
    """Two-site modular adder: IQFT_2 . CZ . QFT_2."""
    _checked_dim(d)
    return _sum_pipeline(1, 1, [Fraction(1)])


def adder_pipeline_unitary(d: int) -> np.ndarray:
    """Full d^2 x d^2 matrix of the two-site adder pipeline."""
    layout = _one_site_layout([("x", "operand", d), ("y", "result", d)])
    gates = adder_gates(d)
    dim = d * d
    unitary = np.empty((dim, dim), dtype=np.complex128)
    for col in range(dim):
        state = prepare_basis(layout, {"x": col // d, "y": col % d})
        for gate in gates:
            apply_qudit_gate(state, gate)
        unitary[:, col] = state.amps
    return unitary


def qudit_add(x: int, y: int, d: int) -> ModularInt:
    """(x + y) mod d via phase encoding on the y site."""
    _check_values([x, y], d)
    layout = _one_site_layout([("x", "operand", d), ("y", "result", d)])
    state = prepare_basis(layout, {"x": x, "y": y})
    for gate in adder_gates(d):
        apply_qudit_gate(state, gate)
    value = _expect_point_mass(readout(state, "y"), f"qudit_add({x}, {y}, {d})")
    return ModularInt(value, d)


def qudit_multi_add(values: list[int], d: int, ancilla: bool = False) -> ModularInt:
    """Sum of any number of inputs mod d.

    Compact form accumulates into the last input site; with ancilla=True
    the sum lands in an extra zero-initialized site and every input is
    preserved.
    """
    _check_values(values, d)
    n = len(values)
    if ancilla:
        regs = [(f"x{m + 1}", "value", d) for m in range(n)] + [("sum", "result", d)]
        layout = _one_site_layout(regs)
        state = prepare_basis(layout, {f"x{m + 1}": v for m, v in enumerate(values)})
        gates = _sum_pipeline(n, n, [Fraction(1)] * n)
        out = "sum"
    else:
        if n == 1:
            return ModularInt(values[0] % d, d)
        regs = [(f"x{m + 1}", "value", d) for m in range(n - 1)] + (
            [(f"x{n}", "result", d)]
        )
        layout = _one_site_layout(regs)
        state = prepare_basis(layout, {f"x{m + 1}": v for m, v in enumerate(values)})
        gates = _sum_pipeline(n - 1, n - 1, [Fraction(1)] * (n - 1))
        out = f"x{n}"
    for gate in gates:
        apply_qudit_gate(state, gate)
    value = _expect_point_mass(readout(state, out), f"qudit_multi_add({values}, {d})")
    if ancilla:
        for m, v in enumerate(values):
            kept = _expect_point_mass(readout(state, f"x{m + 1}"), "input preservation")
            if kept != v:
                raise AssertionError(f"input x{m + 1} changed from {v} to {kept}")
    return ModularInt(value, d)


def qudit_exact_add(x: int, y: int, d: int) -> int:
    """x + y without wraparound, summed into a site of dimension 2d - 1."""
    _check_values([x, y], d)
    d_sum = dimension_for_exact_sum(2, d)
    layout = _one_site_layout([("x", "value", d), ("y", "value", d), ("sum", "result", d_sum)])
    state = prepare_basis(layout, {"x": x, "y": y})
    for gate in _sum_pipeline(2, 2, [Fraction(1), Fraction(1)]):
        apply_qudit_gate(state, gate)
    return _expect_point_mass(readout(state, "sum"), f"qudit_exact_add({x}, {y}, {d})")


def qudit_mean(values: list[int], d: int) -> OutcomeDistribution:
    """Readout distribution of the mean (sum x_m) / N, via CZ^N gates.

    A point mass at the mean when N divides the sum; otherwise the
    Dirichlet-kernel spread around it.
    """
    _check_values(values, d)
    n = len(values)
    return qudit_weighted_sum(values, [Fraction(1, n)] * n, d)


def qudit_weighted_sum(values: list[int], weights: list[Fraction | int], d: int) -> OutcomeDistribution:
    """Readout distribution of sum a_m x_m mod d, via CZ^(1/a_m) gates."""
    _check_values(values, d)
    factors = []
    for a in weights:
        a = Fraction(a)
        if a <= 0:
            raise ValueError(f"weights must be positive, got {a}")
        factors.append(1 / a)
    if len(factors) != len(values):
        raise ValueError(f"{len(values)} values but {len(factors)} weights")
    n = len(values)
    regs = [(f"x{m + 1}", "value", d) for m in range(n)] + [("sum", "result", d)]
    layout = _one_site_layout(regs)
    state = prepare_basis(layout, {f"x{m + 1}": v for m, v in enumerate(values)})
    for gate in _sum_pipeline(n, n, factors):
        apply_qudit_gate(state, gate)
    return readout(state, "sum")


def qudit_signed_add(x: int, y: int, d: int) -> SignedCode:
    """Signed addition through the residue encoding; inputs and the sum
    must lie in the signed window of d."""
    lo, hi = signed_window(d)
    if not (lo <= x <= hi and lo <= y <= hi):
        raise ValueError(f"inputs must lie in the signed window [{lo}, {hi}] of d={d}")
    if not lo <= x + y <= hi:
        raise ValueError(f"sum {x + y} overflows the signed window [{lo}, {hi}] of d={d}")
    code = qudit_add(SignedCode(x, d).code, SignedCode(y, d).code, d)
    return SignedCode.from_code(code.value, d)
