"""Fourier-transform arithmetic circuits.

Synthesis of adder, multiplier, and weighted-sum circuits into a
gate-level IR; exact dense simulation over mixed-radix registers;
d-dimensional pipelines for the same operations; classical oracles every
circuit is verified against; and OpenQASM export.
"""

from . import arith, ir, qasm, qudit, sim, synth

__version__ = "0.1.0"

__all__ = ["arith", "ir", "qasm", "qudit", "sim", "synth", "__version__"]
