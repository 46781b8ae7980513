"""Order-preserving scheduling of independent check items."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from src.config.settings import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def run_items(fn: Callable[[T], R], items: Sequence[T], workers: int | None = None) -> list[R]:
    """Apply fn to every item, results in input order.

    Args:
        fn: Work function (pure in its item).
        items: Work items.
        workers: Pool size; defaults to settings.workers. 1 runs inline.

    Returns:
        Results aligned with items.
    """
    size = workers if workers is not None else get_settings().workers
    if size <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug("pool_dispatch", extra={"items": len(items), "workers": size})
    with ThreadPoolExecutor(max_workers=size) as pool:
        return list(pool.map(fn, items))
