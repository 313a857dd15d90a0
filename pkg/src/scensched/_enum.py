"""Chunked enumeration of binary labelings, vectorized with numpy."""
from __future__ import annotations

from typing import Callable, Iterator

import numpy as np

CHUNK_CELLS = 1 << 22


def iter_bit_chunks(nbits: int, width_hint: int = 1) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(offset, bits)`` covering all ``2**nbits`` labelings in order.

    Row ``i`` of ``bits`` is labeling ``offset + i`` with the first column as
    its most significant bit, so row order is lexicographic order.
    """
    total = 1 << nbits
    if nbits == 0:
        yield 0, np.zeros((1, 0), dtype=np.int64)
        return
    chunk = max(1, CHUNK_CELLS // max(nbits, width_hint, 1))
    shifts = np.arange(nbits - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield start, (masks[:, None] >> shifts) & 1


def argbest(
    nbits: int,
    score: Callable[[np.ndarray], np.ndarray],
    maximize: bool = False,
    width_hint: int = 1,
) -> tuple[int, int]:
    """Index and score of the first labeling attaining the best score."""
    best_val = None
    best_idx = 0
    for offset, bits in iter_bit_chunks(nbits, width_hint):
        vals = score(bits)
        i = int(np.argmax(vals) if maximize else np.argmin(vals))
        v = int(vals[i])
        if best_val is None or (v > best_val if maximize else v < best_val):
            best_val, best_idx = v, offset + i
    return best_idx, best_val


def bits_of(index: int, nbits: int) -> list[int]:
    return [(index >> (nbits - 1 - t)) & 1 for t in range(nbits)]
