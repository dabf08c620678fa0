"""Classical encodings, register sizing rules, and brute-force oracles.

Everything here is exact: values are integers or `fractions.Fraction`,
never floats, so the oracles can serve as ground truth for the circuit
simulations. The one exception is `fractional_readout_distribution`,
which converts an exact phase fraction to a complex amplitude at the
last possible moment.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "ModularInt",
    "SignedCode",
    "FixedPointWeight",
    "OutcomeDistribution",
    "signed_window",
    "oracle_add",
    "oracle_weighted_sum",
    "weighted_sum_rational",
    "oracle_mean",
    "mean_rational",
    "dimension_for_exact_sum",
    "result_width_for_weighted_sum",
    "fractional_readout_distribution",
    "dirichlet_kernel_distribution",
]

_PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class ModularInt:
    """A residue: integer value reduced modulo `modulus`."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} out of range [0, {self.modulus})")


def signed_window(d: int) -> tuple[int, int]:
    """Inclusive range of logical values representable modulo d.

    The window is [-ceil(d/2)+1, floor(d/2)]; at d = 2**n this is the
    two's-complement range shifted so that +d/2 (not -d/2) is included.
    """
    return (-((d + 1) // 2) + 1, d // 2)


@dataclass(frozen=True)
class SignedCode:
    """A signed integer and its residue encoding modulo d.

    Negative -x is stored as the code d - x, so signed addition is
    plain modular addition on codes.
    """

    logical: int
    modulus: int

    def __post_init__(self):
        lo, hi = signed_window(self.modulus)
        if not lo <= self.logical <= hi:
            raise ValueError(
                f"{self.logical} outside signed window [{lo}, {hi}] for d={self.modulus}"
            )

    @property
    def code(self) -> int:
        return self.logical % self.modulus

    @classmethod
    def from_code(cls, code: int, modulus: int) -> "SignedCode":
        if not 0 <= code < modulus:
            raise ValueError(f"code {code} out of range [0, {modulus})")
        logical = code if code <= modulus // 2 else code - modulus
        return cls(logical, modulus)


@dataclass(frozen=True)
class FixedPointWeight:
    """Weight raw / 2**p with raw stored in q bits."""

    raw: int
    q: int
    p: int

    def __post_init__(self):
        if self.q < 1 or self.p < 0:
            raise ValueError(f"invalid width q={self.q} or precision p={self.p}")
        if not 0 <= self.raw < 2**self.q:
            raise ValueError(f"raw {self.raw} out of range [0, 2^{self.q})")

    @property
    def weight(self) -> Fraction:
        return Fraction(self.raw, 2**self.p)


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probability per computational-basis readout of one register."""

    register: str
    probs: np.ndarray  # probs[outcome] = probability

    def __post_init__(self):
        total = float(self.probs.sum())
        if abs(total - 1.0) > _PROB_SUM_TOL or float(self.probs.min()) < -_PROB_SUM_TOL:
            raise ValueError(f"probabilities must be >= 0 and sum to 1, got sum {total}")

    @property
    def outcomes(self) -> int:
        return len(self.probs)

    def as_dict(self) -> dict[int, float]:
        return {k: float(p) for k, p in enumerate(self.probs)}

    def peak(self) -> tuple[int, float]:
        """Most likely outcome; ties resolve toward the smaller outcome."""
        k = int(np.argmax(self.probs))
        return k, float(self.probs[k])


def oracle_add(a: ModularInt, b: ModularInt) -> ModularInt:
    """Modular sum of two residues sharing a modulus."""
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} != {b.modulus}")
    return ModularInt((a.value + b.value) % a.modulus, a.modulus)


def _weighted_numerator(values: list[int], weights: list[FixedPointWeight]) -> tuple[int, int]:
    if not values:
        raise ValueError("need at least one value")
    if len(values) != len(weights):
        raise ValueError(f"{len(values)} values but {len(weights)} weights")
    p = weights[0].p
    if any(w.p != p for w in weights):
        raise ValueError("all weights must share the precision exponent p")
    return sum(w.raw * x for w, x in zip(weights, values)), p


def weighted_sum_rational(values: list[int], weights: list[FixedPointWeight]) -> Fraction:
    """Exact weighted sum (sum raw_m * x_m) / 2**p."""
    num, p = _weighted_numerator(values, weights)
    return Fraction(num, 2**p)


def oracle_weighted_sum(
    values: list[int], weights: list[FixedPointWeight], t: int
) -> tuple[int, bool]:
    """Weighted sum reduced modulo 2**t.

    Returns (integer part, is_exact). is_exact means 2**p divides
    sum raw_m * x_m; when it does, the integer part is the sum mod 2**t,
    otherwise the floor of the exact rational mod 2**t.
    """
    num, p = _weighted_numerator(values, weights)
    exact = num % 2**p == 0
    return (num // 2**p) % 2**t, exact


def oracle_mean(values: list[int], d: int) -> tuple[int, bool]:
    """Arithmetic mean reduced modulo d: (integer part, is_exact).

    is_exact means len(values) divides the sum.
    """
    if not values:
        raise ValueError("need at least one value")
    n = len(values)
    total = sum(values)
    return (total // n) % d, total % n == 0


def mean_rational(values: list[int]) -> Fraction:
    if not values:
        raise ValueError("need at least one value")
    return Fraction(sum(values), len(values))


def dimension_for_exact_sum(N: int, d: int) -> int:
    """Smallest register dimension in which N summands below d never wrap."""
    if N < 2 or d < 2:
        raise ValueError(f"need N >= 2 and d >= 2, got N={N}, d={d}")
    return N * d - N + 1


def result_width_for_weighted_sum(N: int, n: int, q: int) -> int:
    """Result-register width that holds any sum of N products of n-bit
    values with q-bit raw weights: q + n + ceil(log2 N)."""
    if N < 1 or n < 1 or q < 1:
        raise ValueError(f"widths must be >= 1, got N={N}, n={n}, q={q}")
    return q + n + (N - 1).bit_length()


def dirichlet_kernel_distribution(
    v: Fraction | int, modulus: int, register: str = "result"
) -> OutcomeDistribution:
    """Readout distribution of a phase-encoded value v after the inverse
    transform over a register of the given modulus.

    P(l) = |(1/M) sum_k exp(2i pi (v - l) k / M)|^2, evaluated by the
    direct sum. Phase fractions are reduced mod 1 exactly before the
    single conversion to float.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    v = Fraction(v)
    if v < 0:
        raise ValueError(f"phase value must be >= 0, got {v}")
    probs = np.empty(modulus)
    for l in range(modulus):
        theta = (v - l) / modulus  # phase step per k, in turns
        amp = sum(cmath.exp(2j * cmath.pi * float((theta * k) % 1)) for k in range(modulus))
        probs[l] = abs(amp / modulus) ** 2
    return OutcomeDistribution(register, probs)


def fractional_readout_distribution(v: Fraction | int, t: int) -> OutcomeDistribution:
    """Dirichlet-kernel readout over a t-bit register (modulus 2**t)."""
    if t < 1:
        raise ValueError(f"register width must be >= 1, got {t}")
    return dirichlet_kernel_distribution(v, 2**t)
