import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar('T')
R = TypeVar('R')

_logger = logging.getLogger(__name__)


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(item) for item in items]

    _logger.debug('Mapping %d items on %d threads', len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(fn, items))
