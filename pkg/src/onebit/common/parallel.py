"""Order-preserving process-pool map for independent work items"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from .config import settings
from .logger import logger

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None
) -> List[R]:
    """Apply ``fn`` to every item, in input order.

    ``fn`` must be a module-level function so it can be pickled into worker processes.
    With a single worker everything runs in-process.
    """
    work = list(items)
    width = settings.workers if workers is None else workers
    if width <= 1 or len(work) <= 1:
        return [fn(item) for item in work]

    width = min(width, len(work))
    logger.info(f"dispatching {len(work)} work items to {width} processes")
    chunksize = max(1, len(work) // (4 * width))
    with ProcessPoolExecutor(max_workers=width) as pool:
        return list(pool.map(fn, work, chunksize=chunksize))
