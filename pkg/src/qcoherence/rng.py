"""Seeded, counter-based random streams.

Every consumer asks for a named stream keyed by ``(seed, name, index)``. The
generator is Philox, so a stream's output depends only on its key and never
on how many other streams were drawn before it or on which worker runs it.
"""
from __future__ import annotations

import zlib

import numpy as np

STREAMS = ("states", "channels", "group", "verify", "sweep")


def _name_key(name: str) -> int:
    return zlib.crc32(name.encode("utf-8"))


def stream(seed: int, name: str, index: int = 0) -> np.random.Generator:
    """Independent generator for ``(seed, name, index)``."""
    if seed < 0 or index < 0:
        raise ValueError("seed and index must be non-negative")
    ss = np.random.SeedSequence([int(seed), _name_key(name), int(index)])
    return np.random.Generator(np.random.Philox(ss))


def as_generator(seed, name: str) -> np.random.Generator:
    """Accept an int seed or an existing Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return stream(int(seed), name)
