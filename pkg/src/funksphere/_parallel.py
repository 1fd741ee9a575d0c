import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

THREADS_ENV = "FUNKSPHERE_THREADS"


def max_workers() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def chunked_map(func, items: np.ndarray, chunk: int = 64) -> np.ndarray:
    """Apply ``func`` to row chunks of ``items`` and concatenate the results.

    Chunks run on a thread pool capped by ``FUNKSPHERE_THREADS``; numpy
    releases the GIL in the heavy kernels.
    """
    pieces = [items[i:i + chunk] for i in range(0, len(items), chunk)]
    workers = min(max_workers(), len(pieces))
    if workers <= 1:
        return np.concatenate([func(p) for p in pieces])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.concatenate(list(pool.map(func, pieces)))
