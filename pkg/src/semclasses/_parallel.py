"""Ordered process-pool map over a shared read-only object."""
from __future__ import annotations

import multiprocessing as mp
from typing import Callable, Iterable, Iterator

_shared = None


def _call(item):
    func, state = _shared
    return func(state, item)


def ordered_map(func: Callable, state, items: Iterable, threads: int = 1, chunksize: int = 256) -> Iterator:
    """Yield ``func(state, item)`` for each item, in input order.

    With ``threads > 1`` work is spread over forked worker processes that
    inherit ``state`` without pickling it; results are still yielded by
    input position, so output never depends on the worker count.
    """
    global _shared
    if threads <= 1 or "fork" not in mp.get_all_start_methods():
        for item in items:
            yield func(state, item)
        return
    _shared = (func, state)
    try:
        with mp.get_context("fork").Pool(threads) as pool:
            yield from pool.imap(_call, items, chunksize)
    finally:
        _shared = None
