"""Ordered fan-out of independent jobs (simulation trials, optimizer restarts)."""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Applies ``func`` to every item and returns the results in input order.

    With ``workers <= 1`` the items run sequentially in the calling thread.
    Results never depend on ``workers``: each job owns its inputs and the merge
    is by position.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
