"""Deterministic fan-out of independent work chunks."""
import os
from concurrent.futures import ThreadPoolExecutor


def default_threads() -> int:
    return os.cpu_count() or 1


def run_chunks(fn, items, threads=1):
    """Map ``fn`` over ``items`` and return results in input order.

    Chunk boundaries and seeds are fixed by the caller, so the merged
    result does not depend on ``threads``.
    """
    items = list(items)
    if threads is None or threads <= 0:
        threads = default_threads()
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))
