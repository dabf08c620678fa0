"""Synthesis of two-level arithmetic circuits from gate-index rules.

All circuits share one skeleton: Fourier-transform the result register,
imprint the arithmetic as controlled phase rotations that are diagonal
in the transformed frame, then invert the transform. Bit 1 of every
register is the most significant and sits on the register's first site.

With w sites in the transformed register, the gate acting on transformed
site s (1-indexed) controlled by operand bit j carries the rotation
exponent l below; rotations with l < 1 are full turns and are never
emitted:

* adder:               l = j + s - n
* constant multiplier: l = i + m + u - n - bits(b)   (m runs over the
  constant's set bits, i over value bits, u over result sites)
* multiplier:          l = i + j + u - 2n            (controls a_i, b_j)
* weighted sum:        l = i + j + u + p - n - q     (controls x_m bit i,
  weight a_m bit j)

The Fourier block is emitted with its swap network by default so that
transformed site s is physical site s; ``include_swaps=False`` drops the
swaps and reindexes every phase target through the site reversal
instead, which yields the same unitary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import result_width_for_weighted_sum
from .ir import FOURIER, PHASE, SWAP, CircuitIR, Gate, Register, RegisterLayout, inverse

__all__ = [
    "OPERATIONS",
    "ArithmeticSpec",
    "synth",
    "synth_qft",
    "synth_adder",
    "synth_const_multiplier",
    "synth_multiplier",
    "synth_modular_multiplier",
    "synth_weighted_sum",
]

OPERATIONS = ("qft", "adder", "const_multiplier", "multiplier", "weighted_sum")


@dataclass(frozen=True)
class ArithmeticSpec:
    """Which circuit to synthesize and with what widths.

    n: operand bits. exact: widen the result so no wraparound occurs.
    signed: interpret operands and result in the two's-complement window
    (the modular circuit is unchanged; encoding happens at the ends).
    constant: the fixed multiplicand of const_multiplier. N/q/p/t: input
    count, weight bits, weight precision, and result bits of the
    weighted sum; t also selects the modular multiplier's result width.
    """

    operation: str
    n: int = 0
    exact: bool = False
    signed: bool = False
    constant: int | None = None
    N: int | None = None
    q: int | None = None
    p: int | None = None
    t: int | None = None

    def __post_init__(self):
        if self.operation not in OPERATIONS:
            raise ValueError(f"unknown operation {self.operation!r}")
        if self.operation == "weighted_sum":
            if self.N is None or self.q is None or self.N < 1 or self.n < 1 or self.q < 1:
                raise ValueError("weighted_sum needs N, n, q >= 1")
            if self.p is None or self.p < 0:
                raise ValueError("weighted_sum needs p >= 0")
        elif self.n < 1:
            raise ValueError(f"{self.operation} needs n >= 1")
        if self.t is not None and self.t < 1:
            raise ValueError(f"result width must be >= 1, got {self.t}")
        if self.operation == "const_multiplier":
            if self.constant is None or self.constant < 0:
                raise ValueError("const_multiplier needs a constant >= 0")
            if self.constant.bit_length() > self.n:
                raise ValueError(
                    f"constant {self.constant} does not fit in {self.n} bits"
                )
        if self.exact and self.signed:
            raise ValueError("signed arithmetic is modular; drop --exact")

    def meta(self) -> dict:
        out = {"op": self.operation, "n": self.n}
        if self.exact:
            out["exact"] = 1
        if self.signed:
            out["signed"] = 1
        if self.constant is not None:
            out["constant"] = self.constant
        for key in ("N", "q", "p", "t"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


def synth(spec: ArithmeticSpec, include_swaps: bool = True) -> CircuitIR:
    """Dispatch on the spec's operation."""
    if spec.operation == "qft":
        return synth_qft(spec.n, include_swaps)
    if spec.operation == "adder":
        return synth_adder(spec.n, spec.exact, signed=spec.signed, include_swaps=include_swaps)
    if spec.operation == "const_multiplier":
        return synth_const_multiplier(spec.n, spec.constant, include_swaps)
    if spec.operation == "multiplier":
        if spec.t is not None:
            return synth_modular_multiplier(spec.n, spec.t, include_swaps)
        return synth_multiplier(spec.n, include_swaps)
    N, n, q, p = spec.N, spec.n, spec.q, spec.p
    t = spec.t if spec.t is not None else result_width_for_weighted_sum(N, n, q)
    return synth_weighted_sum(N, n, q, p, t, include_swaps)


def _qft_block(sites: list[int], include_swaps: bool) -> list[Gate]:
    """Fourier cascade over the given sites (most significant first)."""
    w = len(sites)
    gates = []
    for j in range(w):
        gates.append(Gate(FOURIER, sites[j]))
        for m in range(1, w - j):
            gates.append(Gate(PHASE, sites[j], (sites[j + m],), l=m + 1))
    if include_swaps:
        for i in range(w // 2):
            gates.append(Gate(SWAP, sites[w - 1 - i], (sites[i],)))
    return gates


def _transformed_site(sites: list[int], s: int, include_swaps: bool) -> int:
    """Physical site holding transformed index s (1-based, MSB first)."""
    return sites[s - 1] if include_swaps else sites[len(sites) - s]


def _phase_rules(
    result_sites: list[int],
    terms: list[tuple[tuple[int, ...], int]],
    include_swaps: bool,
) -> list[Gate]:
    """Emit one rotation per (controls, base) term and transformed site s
    with l = base + s >= 1."""
    gates = []
    for controls, base in terms:
        for s in range(1, len(result_sites) + 1):
            l = base + s
            if l >= 1:
                target = _transformed_site(result_sites, s, include_swaps)
                gates.append(Gate(PHASE, target, controls, l=l))
    return gates


def _fourier_sandwich(
    layout: RegisterLayout,
    result_sites: list[int],
    terms: list[tuple[tuple[int, ...], int]],
    include_swaps: bool,
    meta: dict,
) -> CircuitIR:
    block = _qft_block(result_sites, include_swaps)
    qft = CircuitIR(layout, tuple(block))
    phases = _phase_rules(result_sites, terms, include_swaps)
    gates = qft.gates + tuple(phases) + inverse(qft).gates
    return CircuitIR(layout, gates, meta)


def synth_qft(width: int, include_swaps: bool = True) -> CircuitIR:
    """Fourier transform over one width-site register.

    On basis state |x> the output amplitudes are exp(2i pi x k / 2^width)
    / sqrt(2^width), with k read most-significant-first (swaps included);
    without swaps the output site order is reversed.
    """
    if width < 1:
        raise ValueError(f"width must be >= 1, got {width}")
    layout = RegisterLayout([Register("a", "operand", width, 2)])
    gates = _qft_block(list(layout.site_range("a")), include_swaps)
    return CircuitIR(layout, tuple(gates), ArithmeticSpec("qft", width).meta() | {"result": "a"})


def synth_adder(
    n: int, exact: bool = False, signed: bool = False, include_swaps: bool = True
) -> CircuitIR:
    """Add register b into register a in the transformed frame.

    Modular: a has n sites and reads (a + b) mod 2^n. Exact: a has n + 1
    sites (leading zero) and reads a + b. Either way the rotation on
    transformed site s controlled by b's bit j is l = j + s - n.
    """
    spec = ArithmeticSpec("adder", n, exact=exact, signed=signed)
    w = n + 1 if exact else n
    layout = RegisterLayout(
        [Register("b", "operand", n, 2), Register("a", "result", w, 2)]
    )
    b_sites = list(layout.site_range("b"))
    a_sites = list(layout.site_range("a"))
    terms = [((b_sites[j - 1],), j - n) for j in range(1, n + 1)]
    return _fourier_sandwich(layout, a_sites, terms, include_swaps, spec.meta() | {"result": "a"})


def synth_const_multiplier(n: int, constant: int, include_swaps: bool = True) -> CircuitIR:
    """Multiply an n-bit input by a fixed constant into a zeroed result.

    The constant's binary decomposition turns the product into a sum of
    shifted copies of x, so every rotation is controlled by a single x
    bit: l = i + m + u - n - bits(constant) for each set bit m.
    """
    spec = ArithmeticSpec("const_multiplier", n, constant=constant)
    nb = constant.bit_length()
    t = n + nb
    layout = RegisterLayout(
        [Register("x", "operand", n, 2), Register("out", "result", t, 2)]
    )
    x_sites = list(layout.site_range("x"))
    terms = []
    for m in range(1, nb + 1):
        if constant >> (nb - m) & 1:
            for i in range(1, n + 1):
                terms.append(((x_sites[i - 1],), i + m - n - nb))
    out_sites = list(layout.site_range("out"))
    return _fourier_sandwich(layout, out_sites, terms, include_swaps, spec.meta() | {"result": "out"})


def synth_multiplier(n: int, include_swaps: bool = True) -> CircuitIR:
    """Product of two n-bit registers into a zeroed 2n-site result."""
    return _multiplier(n, 2 * n, ArithmeticSpec("multiplier", n), include_swaps)


def synth_modular_multiplier(n: int, t: int, include_swaps: bool = True) -> CircuitIR:
    """Product modulo 2^t: same rotation rule, result register cut to t sites."""
    if t < 1:
        raise ValueError(f"result width must be >= 1, got {t}")
    return _multiplier(n, t, ArithmeticSpec("multiplier", n, t=t), include_swaps)


def _multiplier(n: int, t: int, spec: ArithmeticSpec, include_swaps: bool) -> CircuitIR:
    layout = RegisterLayout(
        [
            Register("a", "operand", n, 2),
            Register("b", "operand", n, 2),
            Register("out", "result", t, 2),
        ]
    )
    a_sites = list(layout.site_range("a"))
    b_sites = list(layout.site_range("b"))
    terms = []
    for j in range(1, n + 1):  # adder block controlled by b_j
        for i in range(1, n + 1):
            terms.append(((b_sites[j - 1], a_sites[i - 1]), i + j - 2 * n))
    out_sites = list(layout.site_range("out"))
    return _fourier_sandwich(layout, out_sites, terms, include_swaps, spec.meta() | {"result": "out"})


def synth_weighted_sum(
    N: int, n: int, q: int, p: int, t: int | None = None, include_swaps: bool = True
) -> CircuitIR:
    """Sum of N products a_m * x_m with q-bit weights read as raw / 2^p.

    One multiplication block per input pair; the rotation controlled by
    weight bit j and value bit i on transformed result site u is
    l = i + j + u + p - n - q. The result register holds the sum mod 2^t
    exactly when 2^p divides sum(raw_m * x_m), and the kernel-spread
    encoding of the fractional value otherwise.
    """
    if t is None:
        t = result_width_for_weighted_sum(N, n, q)
    spec = ArithmeticSpec("weighted_sum", n, N=N, q=q, p=p, t=t)
    if t < 1:
        raise ValueError(f"result width must be >= 1, got {t}")
    regs = []
    for m in range(1, N + 1):
        regs.append(Register(f"a{m}", "weight", q, 2))
        regs.append(Register(f"x{m}", "value", n, 2))
    regs.append(Register("out", "result", t, 2))
    layout = RegisterLayout(regs)
    terms = []
    for m in range(1, N + 1):
        a_sites = list(layout.site_range(f"a{m}"))
        x_sites = list(layout.site_range(f"x{m}"))
        for j in range(1, q + 1):
            for i in range(1, n + 1):
                terms.append(((a_sites[j - 1], x_sites[i - 1]), i + j + p - n - q))
    out_sites = list(layout.site_range("out"))
    return _fourier_sandwich(layout, out_sites, terms, include_swaps, spec.meta() | {"result": "out"})
