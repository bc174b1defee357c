"""Order-preserving map over worker processes."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from .ffchar import FqField


@lru_cache(maxsize=32)
def get_field(p: int, k: int = 1) -> FqField:
    """Per-process cache so workers build each log table once."""
    return FqField(p, k)


def pmap(func, items, jobs: int = 1):
    """list(map(func, items)), optionally across processes; output order follows input."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    chunk = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=chunk))
