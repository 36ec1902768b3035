"""
Counter-based random streams.

Every stream is a Philox generator keyed by the run seed plus a tuple of
integers naming the stream (what it feeds, which message, which chunk, ...).
Two calls with the same key produce the same numbers no matter which thread
asks or in what order, which is what makes parallel Monte Carlo reproducible.
"""
from typing import Iterator, Tuple

import numpy as np

# Shots generated per chunk; the chunk partition never depends on the worker count
CHUNK_SIZE = 1 << 15

# First element of every key, so unrelated consumers never share a stream
STREAM_CONE = 1
STREAM_HOP = 2
STREAM_CASCADE = 3
STREAM_BOOTSTRAP = 4
STREAM_CODE = 5
STREAM_GEOMETRY = 6
STREAM_SPLITS = 7


def stream(seed: int, *key: int) -> np.random.Generator:
    """Generator for the stream named ``key`` under ``seed``."""
    sequence = np.random.SeedSequence(entropy=int(seed) & ((1 << 64) - 1), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(sequence))


def chunks(total: int, size: int = CHUNK_SIZE) -> Iterator[Tuple[int, int]]:
    """Yield ``(chunk_index, chunk_length)`` covering ``total`` items."""
    index = 0
    start = 0
    while start < total:
        length = min(size, total - start)
        yield index, length
        index += 1
        start += length
