"""Order-preserving fan-out over worker processes."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def chunked(items: Sequence[T], n_chunks: int) -> List[Sequence[T]]:
    """Split into at most ``n_chunks`` contiguous chunks; depends only on len(items)."""
    n_chunks = max(1, min(n_chunks, len(items)))
    step, extra = divmod(len(items), n_chunks)
    out, start = [], 0
    for i in range(n_chunks):
        stop = start + step + (1 if i < extra else 0)
        out.append(items[start:stop])
        start = stop
    return out


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """``[fn(x) for x in items]``, optionally spread over processes.

    Results always come back in input order, so output never depends on the
    worker count. ``fn`` must be picklable (a module-level function).
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))
