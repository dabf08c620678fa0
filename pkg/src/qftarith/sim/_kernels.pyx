# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for dense mixed-radix state updates.

Mirror of `_kernels_py`: in-place updates of a contiguous complex128
amplitude array. Subspace enumeration walks a mixed-radix odometer over
the sites a gate does not touch, so each update visits exactly the
amplitudes it changes.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.complex128_t cplx


cdef inline void _strides(cnp.int64_t[::1] dims, cnp.int64_t* out) noexcept:
    cdef Py_ssize_t n = dims.shape[0]
    cdef Py_ssize_t s
    cdef cnp.int64_t acc = 1
    for s in range(n - 1, -1, -1):
        out[s] = acc
        acc *= dims[s]


cdef Py_ssize_t _free_sites(
    cnp.int64_t[::1] dims,
    cnp.int64_t* strides,
    tuple skip,
    cnp.int64_t* free_stride,
    cnp.int64_t* free_dim,
) except -1:
    cdef Py_ssize_t n = dims.shape[0]
    cdef Py_ssize_t s, m = 0
    if n > 64:
        raise ValueError(f"kernel supports at most 64 sites, got {n}")
    for s in range(n):
        if s not in skip:
            free_stride[m] = strides[s]
            free_dim[m] = dims[s]
            m += 1
    return m


cdef inline cnp.int64_t _advance(
    cnp.int64_t base,
    cnp.int64_t* digits,
    cnp.int64_t* free_stride,
    cnp.int64_t* free_dim,
    Py_ssize_t m,
) noexcept:
    # one odometer step over the free sites; returns -1 after the last state
    cdef Py_ssize_t j
    for j in range(m - 1, -1, -1):
        digits[j] += 1
        base += free_stride[j]
        if digits[j] < free_dim[j]:
            return base
        digits[j] = 0
        base -= free_stride[j] * free_dim[j]
    return -1


def apply_site_matrix(cplx[::1] amps, cnp.int64_t[::1] dims, Py_ssize_t site, const cplx[:, ::1] matrix):
    cdef Py_ssize_t n = dims.shape[0]
    cdef cnp.int64_t[64] strides, free_stride, free_dim, digits
    cdef Py_ssize_t m, x, y
    cdef cnp.int64_t base, st
    cdef cnp.int64_t d = dims[site]
    cdef cplx acc
    cdef cplx[::1] scratch = np.empty(d, dtype=np.complex128)

    _strides(dims, strides)
    st = strides[site]
    m = _free_sites(dims, strides, (site,), free_stride, free_dim)
    for x in range(m):
        digits[x] = 0

    base = 0
    while base >= 0:
        for x in range(d):
            scratch[x] = amps[base + x * st]
        for x in range(d):
            acc = 0
            for y in range(d):
                acc = acc + matrix[x, y] * scratch[y]
            amps[base + x * st] = acc
        base = _advance(base, digits, free_stride, free_dim, m)


def apply_phase_on_ones(cplx[::1] amps, cnp.int64_t[::1] dims, tuple sites, cplx phase):
    cdef cnp.int64_t[64] strides, free_stride, free_dim, digits
    cdef Py_ssize_t m, j
    cdef cnp.int64_t base, offset = 0

    _strides(dims, strides)
    for j in sites:
        offset += strides[j]
    m = _free_sites(dims, strides, sites, free_stride, free_dim)
    for j in range(m):
        digits[j] = 0

    base = offset
    while base >= 0:
        amps[base] = amps[base] * phase
        base = _advance(base, digits, free_stride, free_dim, m)


def apply_two_site_phase_table(
    cplx[::1] amps, cnp.int64_t[::1] dims, Py_ssize_t site_a, Py_ssize_t site_b, const cplx[:, ::1] table
):
    cdef cnp.int64_t[64] strides, free_stride, free_dim, digits
    cdef Py_ssize_t m, j, x, y
    cdef cnp.int64_t base, sa, sb
    cdef cnp.int64_t da = dims[site_a], db = dims[site_b]

    _strides(dims, strides)
    sa = strides[site_a]
    sb = strides[site_b]
    m = _free_sites(dims, strides, (site_a, site_b), free_stride, free_dim)
    for j in range(m):
        digits[j] = 0

    base = 0
    while base >= 0:
        for x in range(da):
            for y in range(db):
                amps[base + x * sa + y * sb] = amps[base + x * sa + y * sb] * table[x, y]
        base = _advance(base, digits, free_stride, free_dim, m)


def apply_swap(cplx[::1] amps, cnp.int64_t[::1] dims, Py_ssize_t site_a, Py_ssize_t site_b):
    cdef cnp.int64_t[64] strides, free_stride, free_dim, digits
    cdef Py_ssize_t m, j, x, y
    cdef cnp.int64_t base, sa, sb, i1, i2
    cdef cnp.int64_t d = dims[site_a]
    cdef cplx tmp

    _strides(dims, strides)
    sa = strides[site_a]
    sb = strides[site_b]
    m = _free_sites(dims, strides, (site_a, site_b), free_stride, free_dim)
    for j in range(m):
        digits[j] = 0

    base = 0
    while base >= 0:
        for x in range(d):
            for y in range(x + 1, d):
                i1 = base + x * sa + y * sb
                i2 = base + y * sa + x * sb
                tmp = amps[i1]
                amps[i1] = amps[i2]
                amps[i2] = tmp
        base = _advance(base, digits, free_stride, free_dim, m)
