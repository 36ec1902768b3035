import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from django.conf import settings

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def resolve_threads(threads: int | None) -> int:
    """Worker cap from the argument, falling back to the configured default."""
    if threads is None:
        threads = settings.CONE_BOUND['DEFAULT_THREADS']
    return max(1, int(threads))


def ordered_map(func: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> List[R]:
    """
    Apply ``func`` to every item, possibly on several threads.

    Results come back in input order, never completion order.
    """
    items = list(items)
    workers = min(resolve_threads(threads), max(1, len(items)))
    if workers == 1:
        return [func(item) for item in items]

    logger.debug(f"Fanning out {len(items)} tasks over {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
