"""Random stream management.

Every stochastic routine takes an explicit ``numpy.random.Generator``. Parallel
workers get independent child streams spawned from one ``SeedSequence`` so a
result depends on the seed and the work split, never on the thread count.
"""

import numpy as np


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def spawn_rngs(seed: int, n_streams: int) -> list[np.random.Generator]:
    """Return ``n_streams`` independent generators derived from ``seed``."""
    if n_streams < 1:
        raise ValueError("n_streams must be >= 1")
    children = np.random.SeedSequence(seed).spawn(n_streams)
    return [make_rng(child) for child in children]


def chunk_sizes(total: int, chunk: int) -> list[int]:
    """Split ``total`` items into consecutive chunks of at most ``chunk``."""
    if total < 1 or chunk < 1:
        raise ValueError("total and chunk must be >= 1")
    full, rest = divmod(total, chunk)
    return [chunk] * full + ([rest] if rest else [])
