# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense kernels for flip-and-phase operators on state vectors."""
import numpy as np
from libc.stdint cimport uint64_t, uint8_t


cdef inline uint8_t _parity(uint64_t idx, const uint64_t[:] masks) noexcept nogil:
    cdef Py_ssize_t k
    cdef uint8_t acc = 0
    cdef uint64_t m
    for k in range(masks.shape[0]):
        m = masks[k]
        if (idx & m) == m:
            acc ^= 1
    return acc


def parity_table(int n, const uint64_t[:] masks):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    out = np.empty(size, dtype=np.uint8)
    cdef uint8_t[:] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(size):
            o[i] = _parity(<uint64_t>i, masks)
    return out


def apply_phase_flip(const double complex[:] amps, const uint64_t[:] masks, uint64_t xmask):
    cdef Py_ssize_t size = amps.shape[0]
    out = np.empty(size, dtype=np.complex128)
    cdef double complex[:] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(size):
            if _parity(<uint64_t>i, masks):
                o[<Py_ssize_t>((<uint64_t>i) ^ xmask)] = -amps[i]
            else:
                o[<Py_ssize_t>((<uint64_t>i) ^ xmask)] = amps[i]
    return out


def apply_phase_flip_columns(const double complex[:, :] block, const uint64_t[:] masks, uint64_t xmask):
    """Row action of the operator on every column of ``block``."""
    cdef Py_ssize_t rows = block.shape[0], cols = block.shape[1]
    out = np.empty((rows, cols), dtype=np.complex128)
    cdef double complex[:, :] o = out
    cdef Py_ssize_t i, j, r
    with nogil:
        for i in range(rows):
            r = <Py_ssize_t>((<uint64_t>i) ^ xmask)
            if _parity(<uint64_t>i, masks):
                for j in range(cols):
                    o[r, j] = -block[i, j]
            else:
                for j in range(cols):
                    o[r, j] = block[i, j]
    return out
