"""Numpy fallback kernels for dense mixed-radix state updates.

Same contracts as the compiled `_kernels` extension: every function
mutates the amplitude array in place. `dims` is the per-site dimension
vector; site 0 is the most significant position of the flattened index.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "numpy"


def _shape(dims) -> tuple[int, ...]:
    return tuple(int(d) for d in dims)


def apply_site_matrix(amps: np.ndarray, dims, site: int, matrix: np.ndarray) -> None:
    shape = _shape(dims)
    d = shape[site]
    left = math.prod(shape[:site])
    right = math.prod(shape[site + 1 :])
    view = amps.reshape(left, d, right)
    view[:] = np.einsum("ij,ajb->aib", matrix, view)


def apply_phase_on_ones(amps: np.ndarray, dims, sites, phase: complex) -> None:
    view = amps.reshape(_shape(dims))
    index = [slice(None)] * len(dims)
    for s in sites:
        index[s] = 1
    view[tuple(index)] *= phase


def apply_two_site_phase_table(
    amps: np.ndarray, dims, site_a: int, site_b: int, table: np.ndarray
) -> None:
    if site_a > site_b:
        site_a, site_b = site_b, site_a
        table = table.T
    shape = _shape(dims)
    left = math.prod(shape[:site_a])
    mid = math.prod(shape[site_a + 1 : site_b])
    right = math.prod(shape[site_b + 1 :])
    view = amps.reshape(left, shape[site_a], mid, shape[site_b], right)
    view *= table[None, :, None, :, None]


def apply_swap(amps: np.ndarray, dims, site_a: int, site_b: int) -> None:
    view = amps.reshape(_shape(dims))
    amps[:] = np.swapaxes(view, site_a, site_b).flatten()
