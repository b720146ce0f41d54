"""Numpy fallback for the dense kernels in ``_kernels.pyx``."""
from __future__ import annotations

import numpy as np


def parity_table(n: int, masks) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.uint64)
    acc = np.zeros(idx.shape, dtype=bool)
    for m in np.asarray(masks, dtype=np.uint64):
        acc ^= (idx & m) == m
    return acc.astype(np.uint8)


def apply_phase_flip(amps, masks, xmask) -> np.ndarray:
    amps = np.asarray(amps, dtype=np.complex128)
    n = int(amps.shape[0]).bit_length() - 1
    par = parity_table(n, masks).astype(bool)
    out = np.empty_like(amps)
    idx = np.arange(amps.shape[0], dtype=np.uint64) ^ np.uint64(xmask)
    out[idx] = np.where(par, -amps, amps)
    return out


def apply_phase_flip_columns(block, masks, xmask) -> np.ndarray:
    block = np.asarray(block, dtype=np.complex128)
    n = int(block.shape[0]).bit_length() - 1
    par = parity_table(n, masks).astype(bool)
    out = np.empty_like(block)
    idx = np.arange(block.shape[0], dtype=np.uint64) ^ np.uint64(xmask)
    out[idx] = np.where(par[:, None], -block, block)
    return out
